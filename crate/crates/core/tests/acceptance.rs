//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use truthlab::closure::{extract_inner, ClassicalModel};
use truthlab::exec::Exec;
use truthlab::scenarios::{bundled, run_scenario_with, ScenarioOptions, ScenarioReport, SYSTEMS};
use truthlab::schemas::{find_counterexample, find_schema, Arg};
use truthlab::syntax::Term;
use truthlab::valuation::{enumerate_fixed_points, least_fixed_point, Variant};
use truthlab::Result;

const DEPTH: usize = 2;

struct Outcome {
    ok: bool,
    detail: String,
}

fn scenario(id: &str) -> Result<ScenarioReport> {
    run_scenario_with(id, ScenarioOptions { depth: DEPTH, ..ScenarioOptions::default() })
}

fn scenarios(ids: &[&str], budget: Option<Duration>) -> Result<Outcome> {
    let mut parts = Vec::new();
    let mut ok = true;
    for id in ids {
        let t = Instant::now();
        let r = scenario(id)?;
        let dt = t.elapsed();
        let in_time = budget.map_or(true, |b| dt < b);
        ok &= r.passed() && in_time;
        parts.push(format!("{id} {} in {:.1}s ({} steps)", r.verdict, dt.as_secs_f64(), r.steps.len()));
        if !r.passed() {
            eprint!("{}", r.to_text());
        }
    }
    Ok(Outcome { ok, detail: parts.join("; ") })
}

fn enumeration() -> Result<Outcome> {
    let t = Instant::now();
    let sys = bundled("liar_tt", DEPTH)?;
    let fps = enumerate_fixed_points(&sys, 8, Exec::default())?;
    let lfp = least_fixed_point(&sys)?;
    let dt = t.elapsed();
    let count = |p: fn(&truthlab::valuation::ClassFlags) -> bool| fps.iter().filter(|f| p(&f.class)).count();
    let (cons, comp, mixed) = (count(|c| c.consistent), count(|c| c.complete), count(|c| c.mixed));
    let ok = fps.len() == 8
        && (cons, comp, mixed) == (3, 3, 2)
        && lfp.assignment.to_string() == "{L: N, U: N}"
        && dt < Duration::from_secs(1);
    Ok(Outcome {
        ok,
        detail: format!(
            "{} fixed points, consistent {cons} / complete {comp} / mixed {mixed}, lfp {}, {:.3}s",
            fps.len(),
            lfp.assignment,
            dt.as_secs_f64()
        ),
    })
}

fn irregularity() -> Result<Outcome> {
    let mut out = scenarios(&["cd-irregular", "cd-dt"], None)?;
    let sys = bundled("liar", DEPTH)?;
    let lfp = least_fixed_point(&sys)?;
    let b = sys.parse_sentence("T(L)")?;
    let m = ClassicalModel::lemma_b(&sys, &lfp, Variant::Cons, &b)?;
    let w = find_counterexample(&m, "T14")?;
    let expected = find_schema("T14")?.build(&sys, &[Arg::Term(&Term::name("L"))])?;
    let at_lambda = w.as_ref() == Some(&expected);
    out.ok &= at_lambda;
    out.detail.push_str(&format!(
        "; T14 counterexample: {}",
        w.map(|f| f.to_string()).unwrap_or_else(|| "none".into())
    ));
    Ok(out)
}

fn categoricity() -> Result<Outcome> {
    let mut out = scenarios(&["ncat"], None)?;
    let mut n = 0;
    for (id, _) in SYSTEMS {
        let sys = bundled(id, 0)?;
        for fp in enumerate_fixed_points(&sys, 8, Exec::default())? {
            n += 1;
            out.ok &= extract_inner(&ClassicalModel::closure(&sys, &fp))? == fp.assignment;
        }
    }
    out.detail.push_str(&format!("; extract_inner of closure is the identity on {n} fixed points"));
    Ok(out)
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome>>)> = vec![
        ("fixed-point enumeration", Box::new(enumeration)),
        (
            "soundness suites",
            Box::new(|| scenarios(&["cons-model", "comp-model", "sym-model"], Some(Duration::from_secs(60)))),
        ),
        ("mixed failure", Box::new(|| scenarios(&["mixed-failure"], None))),
        ("CD+ irregularity", Box::new(irregularity)),
        ("categoricity perturbation", Box::new(categoricity)),
        ("internal vs deep theories", Box::new(|| scenarios(&["internal-deep"], None))),
        ("duality", Box::new(|| scenarios(&["duality"], None))),
        ("equivalence trio", Box::new(|| scenarios(&["cons-equiv", "tcons-from-8"], None))),
        ("translations", Box::new(|| scenarios(&["translations"], None))),
        ("staged construction", Box::new(|| scenarios(&["fh-construction"], None))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match run() {
            Ok(o) => (o.ok, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {:<26} {} [{:.1}s] {detail}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
