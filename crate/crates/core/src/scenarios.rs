//! Bundled systems and runnable reproductions of the soundness results and
//! countermodel constructions.

use serde::Serialize;

use crate::closure::{extract_deep, extract_inner, extract_internal, fh_construct, ClassicalModel, FhOutcome};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::schemas::{check_dual, check_with, find_schema, Arg, CheckReport, Verdict};
use crate::syntax::{Formula, Language, PoolConfig, SentenceSystem, Term};
use crate::translations::{sigma, tau, Delta, Dual};
use crate::valuation::{
    enumerate_fixed_points, eval_fde, is_fixed_point, class_extension, least_fixed_point, FixedPoint, Variant, V4,
};

/// Bundled sentence systems, by id.
pub const SYSTEMS: &[(&str, &str)] = &[
    ("liar_tt", include_str!("../systems/liar_tt.tl")),
    ("liar", include_str!("../systems/liar.tl")),
    ("grounded", include_str!("../systems/grounded.tl")),
    ("truth_tellers", include_str!("../systems/truth_tellers.tl")),
    ("dself", include_str!("../systems/dself.tl")),
    ("aliases", include_str!("../systems/aliases.tl")),
];

pub fn bundled_source(id: &str) -> Option<&'static str> {
    SYSTEMS.iter().find(|(k, _)| *k == id).map(|(_, s)| *s)
}

/// Parses a bundled system with pools generated to `depth`.
pub fn bundled(id: &str, depth: usize) -> Result<SentenceSystem> {
    let src = bundled_source(id).ok_or_else(|| Error::UnknownScenario(format!("no bundled system `{id}`")))?;
    SentenceSystem::parse_with(src, Some(depth), PoolConfig::default())
}

pub const SCENARIOS: &[(&str, &str)] = &[
    ("cons-model", "closures of consistent fixed points satisfy CKF and CD+ with D as TT or TF"),
    ("comp-model", "closures of complete fixed points satisfy CKF^cp and CD+ with D as not TT or not TF"),
    ("sym-model", "closures of symmetric fixed points satisfy CKF^sym and the symmetric CD+"),
    ("mixed-failure", "the closure of a mixed fixed point refutes every reading of CD+"),
    ("ncat", "CKF holds in a classical model exactly when it is the closure of its inner fixed point"),
    ("cd-irregular", "models of CD+ built from one non-determinate sentence refute inner Kripkean laws"),
    ("cd-dt", "TT or TF does not imply D in CD+"),
    ("ckf-theorems", "derived laws of CKF hold wherever CKF does"),
    ("cons-equiv", "three consistency statements agree on closure models"),
    ("tcons-from-8", "TCons plus sentencehood recovers TDel"),
    ("duality", "the map c exchanges consistent and complete semantics"),
    ("facts", "T-Out for consistent and T-In for complete fixed points"),
    ("internal-deep", "internal and deep theories of closure models"),
    ("translations", "δ faithfulness, typed truth through τ and σ"),
    ("fh-construction", "staged construction of a model with primitive D"),
];

pub fn list_scenarios() -> &'static [(&'static str, &'static str)] {
    SCENARIOS
}

#[derive(Clone, Copy, Debug)]
pub struct ScenarioOptions {
    /// Pool depth for the checked systems.
    pub depth: usize,
    pub max_stages: usize,
    pub exec: Exec,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions {
            depth: 2,
            max_stages: 64,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub operation: String,
    pub arguments: String,
    pub expected: String,
    pub observed: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub description: String,
    pub depth: usize,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("scenario {} (depth {})\n  {}\n", self.scenario, self.depth, self.description);
        for s in &self.steps {
            out.push_str(&format!(
                "  [{}] {} {}\n      expected {}; observed {}\n",
                s.verdict, s.operation, s.arguments, s.expected, s.observed
            ));
        }
        out.push_str(&format!("verdict {}\n", self.verdict));
        out
    }
}

struct Run {
    steps: Vec<Step>,
}

impl Run {
    fn new() -> Self {
        Run { steps: Vec::new() }
    }

    fn step(&mut self, operation: &str, arguments: impl Into<String>, expected: &str, observed: impl Into<String>, ok: bool) {
        self.steps.push(Step {
            operation: operation.into(),
            arguments: arguments.into(),
            expected: expected.into(),
            observed: observed.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        });
    }

    /// Records a check with an expected verdict and returns the report.
    fn check(&mut self, m: &ClassicalModel, theory: &str, expect: Verdict, exec: Exec, what: &str) -> Result<CheckReport> {
        let r = check_with(m, theory, exec)?;
        self.step(
            "check",
            format!("{theory} in {what}"),
            &expect.to_string(),
            summary(&r),
            r.verdict == expect,
        );
        Ok(r)
    }

    fn finish(self, id: &str, depth: usize) -> ScenarioReport {
        let description = SCENARIOS.iter().find(|(k, _)| *k == id).map(|(_, d)| *d).unwrap_or("");
        let verdict = if self.steps.iter().all(|s| s.verdict == Verdict::Pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        ScenarioReport {
            scenario: id.to_string(),
            description: description.to_string(),
            depth,
            steps: self.steps,
            verdict,
        }
    }
}

fn summary(r: &CheckReport) -> String {
    let failing = r.failing_schemas();
    match failing.first() {
        None => format!("pass ({} instances)", r.instance_count()),
        Some(s) => format!(
            "fail at {} ({}), e.g. {}",
            s,
            failing.join(", "),
            r.first_failure(s).unwrap_or("")
        ),
    }
}

fn fixed_points(sys: &SentenceSystem, exec: Exec) -> Result<Vec<FixedPoint>> {
    enumerate_fixed_points(sys, 8, exec)
}

fn closure_of(id: &str, fp: &FixedPoint) -> String {
    format!("closure of {} ({id})", fp.assignment)
}

pub fn run_scenario(id: &str) -> Result<ScenarioReport> {
    run_scenario_with(id, ScenarioOptions::default())
}

pub fn run_scenario_with(id: &str, o: ScenarioOptions) -> Result<ScenarioReport> {
    let run = match id {
        "cons-model" => soundness(o, Variant::Cons)?,
        "comp-model" => soundness(o, Variant::Comp)?,
        "sym-model" => soundness(o, Variant::Sym)?,
        "mixed-failure" => mixed_failure(o)?,
        "ncat" => ncat(o)?,
        "cd-irregular" => cd_irregular(o)?,
        "cd-dt" => cd_dt(o)?,
        "ckf-theorems" => ckf_theorems(o)?,
        "cons-equiv" => cons_equiv(o)?,
        "tcons-from-8" => tcons_from_8(o)?,
        "duality" => duality(o)?,
        "facts" => facts(o)?,
        "internal-deep" => internal_deep(o)?,
        "translations" => translations(o)?,
        "fh-construction" => fh_scenario(o)?,
        _ => return Err(Error::UnknownScenario(id.into())),
    };
    Ok(run.finish(id, o.depth))
}

/// Corollary items accepted by [`countermodel`].
pub const COUNTERMODELS: &[&str] = &["i", "ii", "iii", "iv", "v", "vi", "vii", "cd-dt"];

/// Runs the countermodel construction for one item alone.
pub fn countermodel(item: &str, o: ScenarioOptions) -> Result<ScenarioReport> {
    if item == "cd-dt" {
        return Ok(cd_dt(o)?.finish("cd-dt", o.depth));
    }
    let label = format!("({item})");
    let c = irregular_items()
        .into_iter()
        .find(|c| c.item == label)
        .ok_or_else(|| Error::UnknownScenario(format!("countermodel {item}")))?;
    let mut run = Run::new();
    irregular_item(&mut run, &c, o)?;
    Ok(run.finish("cd-irregular", o.depth))
}

/// Every scenario in listing order.
pub fn run_all(o: ScenarioOptions) -> Result<Vec<ScenarioReport>> {
    SCENARIOS.iter().map(|(id, _)| run_scenario_with(id, o)).collect()
}

fn soundness(o: ScenarioOptions, v: Variant) -> Result<Run> {
    let mut run = Run::new();
    let (ckf, kf) = match v {
        Variant::Cons => ("ckf", Some("kf-cons")),
        Variant::Comp => ("ckf-cp", Some("kf-comp")),
        Variant::Sym => ("ckf-sym", None),
    };
    let cd = format!("cdplus-t-{v}");
    for (sid, _) in SYSTEMS {
        let sys = bundled(sid, o.depth)?;
        for fp in fixed_points(&sys, o.exec)? {
            let fits = match v {
                Variant::Cons => fp.class.consistent,
                Variant::Comp => fp.class.complete,
                Variant::Sym => fp.class.symmetric,
            };
            if !fits {
                continue;
            }
            let m = ClassicalModel::closure(&sys, &fp);
            let what = closure_of(sid, &fp);
            run.check(&m, ckf, Verdict::Pass, o.exec, &what)?;
            run.check(&m, &cd, Verdict::Pass, o.exec, &what)?;
            if let Some(kf) = kf {
                let inner = ClassicalModel::inner(&sys, &fp);
                run.check(&inner, kf, Verdict::Pass, o.exec, &format!("inner model of {} ({sid})", fp.assignment))?;
            }
        }
    }
    Ok(run)
}

/// Evaluates `δ_v(f)` in the closure over the δ-extended system.
fn eval_delta(sys: &SentenceSystem, fp: &FixedPoint, v: Variant, f: &Formula) -> Result<bool> {
    let delta = Delta::new(sys, v)?;
    let ext = class_extension(delta.system(), &fp, v)?;
    ClassicalModel::closure(delta.system(), &ext).eval(&delta.apply(f)?)
}

fn assignment(sys: &SentenceSystem, pairs: &[(&str, V4)]) -> Result<FixedPoint> {
    let w = pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect();
    if !is_fixed_point(sys, &w)? {
        return Err(Error::PreconditionViolated(format!("{w} is not a fixed point")));
    }
    Ok(FixedPoint::new_unchecked(w))
}

fn mixed_failure(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    let sys = bundled("liar_tt", o.depth)?;
    let fp = assignment(&sys, &[("L", V4::B), ("U", V4::N)])?;
    run.step("classify", fp.assignment.to_string(), "mixed", fp.class.label(), fp.class.mixed);
    let m = ClassicalModel::closure(&sys, &fp);
    let witness = sys.parse_sentence("T(U) or not T(L)")?;
    let t3 = find_schema("cdplus:T3")?;
    let inst = t3.build(&sys, &[Arg::Term(&Term::quote(witness.clone()))])?;
    for v in [Variant::Cons, Variant::Comp, Variant::Sym] {
        let th = format!("cdplus-t-{v}");
        let r = run.check(&m, &th, Verdict::Fail, o.exec, &closure_of("liar_tt", &fp))?;
        let failing = r.failing_schemas();
        run.step(
            "failing schemas",
            th.clone(),
            "T3 or D5 among them",
            failing.join(", "),
            failing.iter().any(|s| *s == "T3" || *s == "D5"),
        );
        let holds = eval_delta(&sys, &fp, v, &inst)?;
        run.step("eval", format!("δ_{v}({inst})"), "false", holds.to_string(), !holds);
        let parts = [
            format!("D(quote({witness}))"),
            format!("T(quote(T(quote({witness}))))"),
            format!("not T(quote({witness}))"),
        ];
        let joined = sys.parse_sentence(&parts.join(" and "))?;
        let holds = eval_delta(&sys, &fp, v, &joined)?;
        run.step("eval", format!("δ_{v}({joined})"), "true", holds.to_string(), holds);
    }
    Ok(run)
}

fn ncat(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    // Toggling runs over the depth-1 pool, which has more than a dozen sentences.
    let sys = bundled("liar_tt", o.depth.min(1))?;
    let fps = fixed_points(&sys, o.exec)?;
    run.step("enumerate", "liar_tt", "8 fixed points", fps.len().to_string(), fps.len() == 8);
    for fp in &fps {
        let m = ClassicalModel::closure(&sys, fp);
        let back = extract_inner(&m)?;
        run.step(
            "extract_inner",
            closure_of("liar_tt", fp),
            &fp.assignment.to_string(),
            back.to_string(),
            back == fp.assignment,
        );
        let r = check_with(&m, "ckf", o.exec)?;
        run.step(
            "check",
            format!("ckf in {}", closure_of("liar_tt", fp)),
            if fp.class.consistent { "pass" } else { "fail" },
            summary(&r),
            r.passed() == fp.class.consistent,
        );
        if !fp.class.consistent {
            continue;
        }
        let mut failed = 0;
        let mut recovered = true;
        for f in &sys.sentence_pool {
            let p = m.patch([f.clone()])?;
            let r = check_with(&p, "ckf", o.exec)?;
            if r.passed() {
                // A model of CKF has a consistent fixed point as inner theory
                // and is its closure.
                let inner = FixedPoint::new_unchecked(extract_inner(&p)?);
                recovered &= inner.class.consistent && is_fixed_point(&sys, &inner.assignment)?;
                let c = ClassicalModel::closure(&sys, &inner);
                for g in &sys.sentence_pool {
                    let q = Formula::true_of(g.clone());
                    recovered &= p.eval(&q)? == c.eval(&q)?;
                }
            } else {
                failed += 1;
            }
        }
        let n = sys.sentence_pool.len();
        run.step(
            "patch",
            format!("single toggles of {}", closure_of("liar_tt", fp)),
            &format!("{n} of {n} fail ckf"),
            format!("{failed} of {n} fail ckf"),
            failed == n && n >= 12 && recovered,
        );
    }
    Ok(run)
}

struct Candidate {
    item: &'static str,
    system: &'static str,
    b: Vec<&'static str>,
    schema: &'static str,
}

fn irregular_items() -> Vec<Candidate> {
    vec![
        Candidate { item: "(i)", system: "liar", b: vec!["T(L)"], schema: "cd-irregular:T14-forward" },
        Candidate { item: "(ii)", system: "liar", b: vec!["not T(L)"], schema: "cd-irregular:T14-converse" },
        Candidate { item: "(iii)", system: "truth_tellers", b: vec!["T(U0)", "not T(U0)"], schema: "cd-irregular:T9" },
        Candidate { item: "(iv)", system: "truth_tellers", b: vec!["T(U0) and T(U1)"], schema: "cd-irregular:T10" },
        Candidate { item: "(v)", system: "truth_tellers", b: vec!["not (T(U0) and T(U1))"], schema: "cd-irregular:T11" },
        Candidate {
            item: "(vi)",
            system: "truth_tellers",
            b: vec!["forall v . T(U0) and v = v", "forall v . T(U0) or not v = v"],
            schema: "cd-irregular:T12",
        },
        Candidate {
            item: "(vii)",
            system: "truth_tellers",
            b: vec!["not forall v . T(U0) and v = v", "not forall v . T(U0) or not v = v"],
            schema: "cd-irregular:T13",
        },
    ]
}

fn cd_irregular(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for c in &irregular_items() {
        irregular_item(&mut run, c, o)?;
    }
    Ok(run)
}

fn irregular_item(run: &mut Run, c: &Candidate, o: ScenarioOptions) -> Result<()> {
    let sys = bundled(c.system, o.depth)?;
    let lfp = least_fixed_point(&sys)?;
    let mut tried = Vec::new();
    let mut found = None;
    for b in &c.b {
        let bf = sys.parse_sentence(b)?;
        let m = ClassicalModel::lemma_b(&sys, &lfp, Variant::Cons, &bf)?;
        tried.push(b.to_string());
        if let Some(w) = crate::schemas::find_counterexample(&m, c.schema)? {
            found = Some((bf, m, w));
            break;
        }
    }
    let Some((bf, m, w)) = found else {
        run.step(
            "countermodel",
            format!("{} {} with B among [{}]", c.item, c.schema, tried.join("; ")),
            "a failing instance",
            "none",
            false,
        );
        return Ok(());
    };
    run.step(
        "countermodel",
        format!("{} {} in lemma-b model with B = {bf} ({})", c.item, c.schema, c.system),
        "a failing instance",
        format!("{w} (candidates tried: {})", tried.len()),
        true,
    );
    run.check(&m, "cdplus", Verdict::Pass, o.exec, &format!("lemma-b model with B = {bf}"))?;
    let all = check_with(&m, "cd-irregular", o.exec)?;
    run.step(
        "check",
        format!("cd-irregular in lemma-b model with B = {bf}"),
        "fail",
        format!("failing: {}", all.failing_schemas().join(", ")),
        !all.passed(),
    );
    Ok(())
}

fn cd_dt(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    let sys = bundled("liar", o.depth)?;
    let lfp = least_fixed_point(&sys)?;
    let cd = ClassicalModel::cd(&sys, &lfp, Variant::Cons)?;
    run.check(&cd, "cd-dt", Verdict::Pass, o.exec, "cd model of the least fixed point")?;
    let lambda = sys.parse_sentence("not T(L)")?;
    let m = ClassicalModel::lemma_b(&sys, &lfp, Variant::Cons, &lambda)?;
    run.check(&m, "cdplus", Verdict::Pass, o.exec, &format!("lemma-b model with B = {lambda}"))?;
    let w = crate::schemas::find_counterexample(&m, "CD-DT")?;
    run.step(
        "countermodel",
        format!("CD-DT in lemma-b model with B = {lambda}"),
        "a failing instance",
        w.as_ref().map(|f| f.to_string()).unwrap_or_else(|| "none".into()),
        w.is_some(),
    );
    Ok(run)
}

fn ckf_theorems(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for sid in ["liar_tt", "truth_tellers"] {
        let sys = bundled(sid, o.depth)?;
        for fp in fixed_points(&sys, o.exec)?.into_iter().filter(|f| f.class.consistent) {
            let m = ClassicalModel::closure(&sys, &fp);
            run.check(&m, "ckf-derived", Verdict::Pass, o.exec, &closure_of(sid, &fp))?;
        }
    }
    Ok(run)
}

fn schema_verdicts(r: &CheckReport) -> Vec<(String, bool)> {
    r.schemas.iter().map(|s| (s.id.clone(), s.failure_count == 0)).collect()
}

fn cons_equiv(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for sid in ["liar", "liar_tt", "truth_tellers", "grounded", "aliases"] {
        let sys = bundled(sid, o.depth)?;
        for fp in fixed_points(&sys, o.exec)? {
            let m = ClassicalModel::closure(&sys, &fp);
            if !check_with(&m, "sentencehood", o.exec)?.passed() {
                continue;
            }
            let r = check_with(&m, "cons-equiv", o.exec)?;
            let v = schema_verdicts(&r);
            let same = v.iter().all(|(_, p)| *p == v[0].1);
            let shown: Vec<String> = v.iter().map(|(id, p)| format!("{id}:{}", if *p { "pass" } else { "fail" })).collect();
            run.step(
                "compare",
                format!("CE-i, CE-ii, CE-iii in {}", closure_of(sid, &fp)),
                "identical verdicts",
                shown.join(" "),
                same,
            );
        }
    }
    Ok(run)
}

fn tcons_from_8(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for sid in ["liar_tt", "truth_tellers"] {
        let sys = bundled(sid, o.depth)?;
        for fp in fixed_points(&sys, o.exec)? {
            let m = ClassicalModel::closure(&sys, &fp);
            let cp = check_with(&m, "ckf-cp", o.exec)?;
            let base_ok = cp.schemas.iter().filter(|s| s.id != "TRep").all(|s| s.failure_count == 0);
            let derived = check_with(&m, "ckf-derived", o.exec)?;
            let tcons = derived.schemas.iter().find(|s| s.id == "TCons").map(|s| s.failure_count == 0);
            let sent = check_with(&m, "sentencehood", o.exec)?.passed();
            let ckf = check_with(&m, "ckf", o.exec)?;
            let tdel = ckf.schemas.iter().find(|s| s.id == "TDel").map(|s| s.failure_count == 0);
            let premise = base_ok && tcons == Some(true) && sent;
            run.step(
                "implication",
                format!("CKF without TDel, TCons, sentencehood => TDel in {}", closure_of(sid, &fp)),
                "holds",
                format!("premise {premise}, TDel {}", tdel == Some(true)),
                !premise || tdel == Some(true),
            );
        }
    }
    Ok(run)
}

fn duality(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for sid in ["liar", "liar_tt", "truth_tellers"] {
        let sys = bundled(sid, o.depth)?;
        let dual = Dual::new(&sys)?;
        let pool: Vec<&Formula> = sys.sentence_pool.iter().filter(|f| f.language() == Language::Truth).collect();
        for fp in fixed_points(&sys, o.exec)? {
            let d = fp.dual();
            let is_fp = is_fixed_point(&sys, &d.assignment)?;
            let involutive = d.dual() == fp;
            run.step(
                "dual",
                format!("{} ({sid})", fp.assignment),
                "fixed point, involutive",
                format!("{} is_fixed_point {is_fp}, dual of dual equal {involutive}", d.assignment),
                is_fp && involutive,
            );
            let m = ClassicalModel::closure(&sys, &fp);
            let md = ClassicalModel::closure(dual.system(), &d);
            let agree = o.exec.map(&pool, |f| -> Result<bool> { Ok(m.eval(f)? == md.eval(&dual.apply(f)?)?) });
            let mut bad = 0;
            for a in agree {
                bad += usize::from(!a?);
            }
            run.step(
                "c-duality",
                format!("{} pool sentences, {}", pool.len(), closure_of(sid, &fp)),
                "0 disagreements",
                format!("{bad} disagreements"),
                bad == 0,
            );
            let a = check_with(&m, "ckf", o.exec)?;
            let b = check_with(&ClassicalModel::closure(&sys, &d), "ckf-cp", o.exec)?;
            run.step(
                "swap",
                format!("ckf at {} vs ckf-cp at {}", fp.assignment, d.assignment),
                "equal verdicts",
                format!("{} / {}", a.verdict, b.verdict),
                a.verdict == b.verdict,
            );
            let c = check_dual(&m, "ckf", o.exec)?;
            run.step(
                "c-image",
                format!("ckf at {} vs c(ckf) at {}", fp.assignment, d.assignment),
                "equal verdicts",
                format!("{} / {}", a.verdict, c.verdict),
                a.verdict == c.verdict,
            );
        }
    }
    Ok(run)
}

fn facts(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for sid in ["liar_tt", "truth_tellers"] {
        let sys = bundled(sid, o.depth)?;
        let pool: Vec<&Formula> = sys.sentence_pool.iter().filter(|f| f.language() == Language::Truth).collect();
        for fp in fixed_points(&sys, o.exec)? {
            let inner = ClassicalModel::inner(&sys, &fp);
            let mut out_ok = 0;
            let mut in_ok = 0;
            for a in &pool {
                let ta = inner.eval(&Formula::true_of((*a).clone()))?;
                let va = inner.eval(a)?;
                out_ok += usize::from(!ta || va);
                in_ok += usize::from(!va || ta);
            }
            let n = pool.len();
            if fp.class.consistent {
                run.step("T-out", format!("inner model of {} ({sid})", fp.assignment), &format!("{n} of {n}"), format!("{out_ok} of {n}"), out_ok == n);
            }
            if fp.class.complete {
                run.step("T-in", format!("inner model of {} ({sid})", fp.assignment), &format!("{n} of {n}"), format!("{in_ok} of {n}"), in_ok == n);
            }
        }
    }
    Ok(run)
}

fn internal_deep(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    let sys = bundled("liar", o.depth)?;
    let lfp = least_fixed_point(&sys)?;
    let m = ClassicalModel::closure(&sys, &lfp);
    let excluded = sys.parse_sentence("not T(L) or not not T(L)")?;
    let internal = m.eval(&Formula::true_of(excluded.clone()))?;
    let deep = m.eval(&Formula::true_of(Formula::true_of(excluded.clone())))?;
    run.step("separate", format!("{excluded} in {}", closure_of("liar", &lfp)), "internal, not deep", format!("internal {internal}, deep {deep}"), internal && !deep);
    let glut = assignment(&sys, &[("L", V4::B)])?;
    let g = ClassicalModel::closure(&sys, &glut);
    let contra = sys.parse_sentence("not T(L) and not not T(L)")?;
    let deep = g.eval(&Formula::true_of(Formula::true_of(contra.clone())))?;
    run.step("deep", format!("{contra} in {}", closure_of("liar", &glut)), "deep", deep.to_string(), deep);
    for sid in ["liar", "liar_tt", "truth_tellers"] {
        let sys = bundled(sid, o.depth)?;
        let pool: Vec<&Formula> = sys.sentence_pool.iter().filter(|f| f.language() == Language::Truth).collect();
        for fp in fixed_points(&sys, o.exec)? {
            let m = ClassicalModel::closure(&sys, &fp);
            let res = o.exec.map(&pool, |a| -> Result<(bool, bool)> {
                let tt = |f: Formula| Formula::true_of(Formula::true_of(f));
                let d = m.eval(&tt((*a).clone()))?;
                let dq = m.eval(&tt(Formula::true_of((*a).clone())))?;
                Ok((d == dq, d == eval_fde(&sys, &fp.assignment, a)?.t()))
            });
            let (mut disq, mut collapse) = (0, 0);
            for r in res {
                let (x, y) = r?;
                disq += usize::from(x);
                collapse += usize::from(y);
            }
            let n = pool.len();
            run.step(
                "disquotation",
                format!("deep set of {}", closure_of(sid, &fp)),
                &format!("{n} of {n}, deep = t-bit"),
                format!("{disq} of {n}, t-bit agreement {collapse} of {n}"),
                disq == n && collapse == n,
            );
            let internal = extract_internal(&m)?;
            let deep = extract_deep(&m)?;
            let sub = deep.iter().all(|d| internal.contains(d)) || !fp.class.consistent;
            run.step(
                "extract",
                format!("internal and deep of {}", closure_of(sid, &fp)),
                "deep within internal when consistent",
                format!("internal {}, deep {}", internal.len(), deep.len()),
                sub,
            );
        }
    }
    Ok(run)
}

fn translations(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for sid in ["dself", "liar_tt"] {
        let sys = bundled(sid, o.depth)?;
        let pool: Vec<&Formula> = sys
            .sentence_pool
            .iter()
            .filter(|f| matches!(f.language(), Language::Truth | Language::Det))
            .collect();
        for v in [Variant::Cons, Variant::Comp, Variant::Sym] {
            let delta = Delta::new(&sys, v)?;
            for fp in fixed_points(&sys, o.exec)? {
                let fits = match v {
                    Variant::Cons => fp.class.consistent,
                    Variant::Comp => fp.class.complete,
                    Variant::Sym => fp.class.symmetric,
                };
                if !fits {
                    continue;
                }
                let cd = ClassicalModel::cd(&sys, &fp, v)?;
                let ext = class_extension(delta.system(), &fp, v)?;
                let cl = ClassicalModel::closure(delta.system(), &ext);
                let res = o.exec.map(&pool, |a| -> Result<bool> { Ok(cd.eval(a)? == cl.eval(&delta.apply(a)?)?) });
                let ok = res.into_iter().collect::<Result<Vec<_>>>()?.iter().filter(|b| **b).count();
                run.step(
                    "δ faithfulness",
                    format!("δ_{v} over {} ({sid})", fp.assignment),
                    &format!("{} of {}", pool.len(), pool.len()),
                    format!("{ok} of {}", pool.len()),
                    ok == pool.len(),
                );
            }
        }
    }
    for sid in ["liar_tt", "truth_tellers"] {
        let sys = bundled(sid, o.depth)?;
        let pool: Vec<&Formula> = sys.sentence_pool.iter().filter(|f| f.language() == Language::Truth).collect();
        for fp in fixed_points(&sys, o.exec)? {
            let typed = ClassicalModel::typed(&sys, &fp);
            let cl = ClassicalModel::closure(&sys, &fp);
            let res = o.exec.map(&pool, |a| -> Result<(bool, bool, bool)> {
                let ta = tau(a)?;
                let closure_a = cl.eval(a)?;
                let t_ok = typed.eval(&ta)? == closure_a;
                let st_ok = cl.eval(&sigma(&sys, &ta)?)? == closure_a;
                let s_ok = cl.eval(&sigma(&sys, a)?)? == typed.eval(a)?;
                Ok((t_ok, st_ok, s_ok))
            });
            let (mut t, mut st, mut s) = (0, 0, 0);
            for r in res {
                let (x, y, z) = r?;
                t += usize::from(x);
                st += usize::from(y);
                s += usize::from(z);
            }
            let n = pool.len();
            run.step(
                "τ, σ",
                format!("{} ({sid})", fp.assignment),
                &format!("{n} of {n} each"),
                format!("τ soundness {t}, σ∘τ stability {st}, σ layer doubling {s} of {n}"),
                t == n && st == n && s == n,
            );
            if fp.class.consistent {
                run.check(&typed, "ct-kf-cons", Verdict::Pass, o.exec, &format!("typed model of {} ({sid})", fp.assignment))?;
            }
        }
    }
    Ok(run)
}

fn fh_scenario(o: ScenarioOptions) -> Result<Run> {
    let mut run = Run::new();
    for sid in ["grounded", "liar", "dself"] {
        let sys = bundled(sid, o.depth)?;
        match fh_construct(&sys, o.max_stages)? {
            FhOutcome::Stabilized { stage, determinate, model, .. } => {
                run.step(
                    "fh_construct",
                    sid,
                    if sid == "grounded" { "stabilized" } else { "stabilized or non-stabilized" },
                    format!("stabilized at stage {stage}, {} determinate", determinate.len()),
                    true,
                );
                run.check(&model, "cdplus", Verdict::Pass, o.exec, &format!("stage model ({sid})"))?;
                // Informational: agreement of D with the δ-emulated model.
                let lfp = least_fixed_point(&sys)?;
                let cd = ClassicalModel::cd(&sys, &lfp, Variant::Cons)?;
                let mut agree = 0;
                let pool: Vec<&Formula> = sys
                    .sentence_pool
                    .iter()
                    .filter(|f| matches!(f.language(), Language::Truth | Language::Det))
                    .collect();
                for f in &pool {
                    let d = Formula::det(Term::quote((*f).clone()));
                    agree += usize::from(model.eval(&d)? == cd.eval(&d)?);
                }
                run.step(
                    "compare",
                    format!("D in stage model vs cd model of the least fixed point ({sid})"),
                    "recorded",
                    format!("{agree} of {} agree", pool.len()),
                    true,
                );
            }
            FhOutcome::NonStabilized { trace } => {
                let ok = sid != "grounded";
                run.step(
                    "fh_construct",
                    sid,
                    if ok { "stabilized or non-stabilized" } else { "stabilized" },
                    format!(
                        "non-stabilized after {} stages{}",
                        trace.stages.len() - 1,
                        trace.period.map(|p| format!(", period {p}")).unwrap_or_default()
                    ),
                    ok,
                );
            }
        }
    }
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_systems_parse() {
        for (id, _) in SYSTEMS {
            bundled(id, 0).unwrap();
        }
        assert!(bundled("nope", 0).is_err());
    }

    #[test]
    fn listing_is_stable() {
        let ids: Vec<&str> = list_scenarios().iter().map(|(k, _)| *k).collect();
        for id in ["ncat", "fh-construction", "duality"] {
            assert!(ids.contains(&id));
        }
        assert!(matches!(run_scenario("nope"), Err(Error::UnknownScenario(_))));
    }

    #[test]
    fn small_scenarios_pass_at_depth_zero() {
        let o = ScenarioOptions {
            depth: 0,
            ..ScenarioOptions::default()
        };
        for id in ["mixed-failure", "cd-dt", "internal-deep", "facts"] {
            let r = run_scenario_with(id, o).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
