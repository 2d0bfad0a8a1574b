//! Axiom catalogs, finite instantiation over the pools, and conformance
//! checks of classical models.
//!
//! Schemas quantifying over codes become finite conjunctions over the pools.
//! An object-level `∀t T φ(t)` is expanded over the term pool, since a quote
//! cannot contain a variable bound outside it.

use serde::Serialize;

use crate::closure::ClassicalModel;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::syntax::{Denotation, Formula, Language, OpenFormula, SentenceSystem, Term};
use crate::translations::{negterm, tf, tt, Delta, Dual};
use crate::valuation::{class_extension, Variant};

/// Binary sentence schemas range over at most this many depth-0 sentences.
pub const PAIR_POOL: usize = 64;
/// Upper bound on the instances of a single schema.
pub const MAX_INSTANCES: usize = 500_000;
/// Failures kept per schema in a report.
pub const FAILURES_SHOWN: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetaKind {
    /// Any pool sentence of the schema's language.
    Sentence,
    /// Sentences for binary schemas: depth-0 pool entries only.
    PairSentence,
    /// A one-variable formula from the formula pool.
    Formula,
    /// Any pool term.
    Term,
    /// Pool terms denoting sentences of the schema's language.
    SentenceTerm,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Metavar {
    pub kind: MetaKind,
    pub name: &'static str,
}

#[derive(Clone, Copy, Debug)]
pub enum Arg<'a> {
    Sentence(&'a Formula),
    Formula(&'a OpenFormula),
    Term(&'a Term),
}

impl<'a> Arg<'a> {
    fn s(self) -> &'a Formula {
        match self {
            Arg::Sentence(f) => f,
            _ => unreachable!("metavariable kinds are fixed per schema"),
        }
    }

    fn t(self) -> &'a Term {
        match self {
            Arg::Term(t) => t,
            _ => unreachable!("metavariable kinds are fixed per schema"),
        }
    }

    fn phi(self) -> &'a OpenFormula {
        match self {
            Arg::Formula(f) => f,
            _ => unreachable!("metavariable kinds are fixed per schema"),
        }
    }
}

type Builder = fn(&SentenceSystem, &[Arg]) -> Result<Formula>;

#[derive(Clone, Serialize)]
pub struct Schema {
    pub id: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias: Option<&'static str>,
    pub language: Language,
    pub metavars: Vec<Metavar>,
    pub pattern: &'static str,
    #[serde(skip)]
    build: Builder,
}

impl std::fmt::Debug for Schema {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.id, self.pattern)
    }
}

impl Schema {
    /// Fills the holes with concrete arguments.
    pub fn build(&self, sys: &SentenceSystem, args: &[Arg]) -> Result<Formula> {
        (self.build)(sys, args)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Theory {
    pub id: String,
    pub language: Language,
    pub schemas: Vec<Schema>,
    /// Axioms that only constrain the domain (induction). A standard model
    /// with pool quantifiers satisfies them outright, so they are not
    /// instantiated.
    pub semantic_only: Vec<&'static str>,
    /// Instances are δ-translated and checked in the classical closure.
    pub translation: Option<Variant>,
}

// Shorthands for sentence holes: Tφ, Fφ, TTφ, TFφ.
fn q(f: &Formula) -> Term {
    Term::quote(f.clone())
}

fn t_(f: &Formula) -> Formula {
    Formula::true_of(f.clone())
}

fn f_(f: &Formula) -> Formula {
    Formula::true_of(Formula::not(f.clone()))
}

fn tt_(f: &Formula) -> Formula {
    Formula::true_of(t_(f))
}

fn tf_(f: &Formula) -> Formula {
    Formula::true_of(f_(f))
}

fn d_(f: &Formula) -> Formula {
    Formula::det(q(f))
}

fn iff(a: Formula, b: Formula) -> Formula {
    Formula::iff(a, b)
}

fn not(f: Formula) -> Formula {
    Formula::not(f)
}

fn eq(s: &Term, t: &Term) -> Formula {
    Formula::eq(s.clone(), t.clone())
}

fn truth(t: &Term) -> Formula {
    Formula::truth(t.clone())
}

fn all_instances(sys: &SentenceSystem, phi: &OpenFormula, each: impl Fn(Formula) -> Formula) -> Formula {
    Formula::conj(sys.term_pool.iter().map(|t| each(phi.apply(t))))
}

fn some_instance(sys: &SentenceSystem, phi: &OpenFormula, each: impl Fn(Formula) -> Formula) -> Formula {
    Formula::disj(sys.term_pool.iter().map(|t| each(phi.apply(t))))
}

/// `Sent(val t)` decided at instantiation time.
fn sent(sys: &SentenceSystem, t: &Term) -> Result<Formula> {
    let yes = matches!(sys.denote(t)?, Denotation::Sentence(f) if f.language() == Language::Truth);
    Ok(if yes { sys.verum() } else { not(sys.verum()) })
}

const S: Metavar = Metavar { kind: MetaKind::Sentence, name: "φ" };
const P1: Metavar = Metavar { kind: MetaKind::PairSentence, name: "φ" };
const P2: Metavar = Metavar { kind: MetaKind::PairSentence, name: "ψ" };
const PHI: Metavar = Metavar { kind: MetaKind::Formula, name: "φ(v)" };
const TS: Metavar = Metavar { kind: MetaKind::Term, name: "s" };
const TT_: Metavar = Metavar { kind: MetaKind::Term, name: "t" };
const ST: Metavar = Metavar { kind: MetaKind::SentenceTerm, name: "t" };
const SS: Metavar = Metavar { kind: MetaKind::SentenceTerm, name: "s" };

fn schema(id: &'static str, language: Language, metavars: &[Metavar], pattern: &'static str, build: Builder) -> Schema {
    Schema {
        id,
        alias: None,
        language,
        metavars: metavars.to_vec(),
        pattern,
        build,
    }
}

fn kf(lang: Language) -> Vec<Schema> {
    vec![
        schema("KF1a", lang, &[TS, TT_], "T(s = t) <-> s = t", |_, a| {
            let e = eq(a[0].t(), a[1].t());
            Ok(iff(t_(&e), e))
        }),
        schema("KF1b", lang, &[TS, TT_], "T(not s = t) <-> not s = t", |_, a| {
            let e = not(eq(a[0].t(), a[1].t()));
            Ok(iff(t_(&e), e))
        }),
        schema("KF2a", lang, &[TT_], "TT t <-> T t", |_, a| {
            Ok(iff(tt(a[0].t()), truth(a[0].t())))
        }),
        schema("KF2b", lang, &[TT_], "FT t <-> F t or not Sent(t)", |sys, a| {
            let t = a[0].t();
            let lhs = t_(&not(truth(t)));
            let rhs = match sys.denote(t)? {
                Denotation::Sentence(f) if f.language() == Language::Truth => {
                    Formula::or(truth(&negterm(sys, t)?), not(sys.verum()))
                }
                _ => sys.verum(),
            };
            Ok(iff(lhs, rhs))
        }),
        schema("KF3", lang, &[S], "F not φ <-> T φ", |_, a| {
            Ok(iff(f_(&not(a[0].s().clone())), t_(a[0].s())))
        }),
        schema("KF4a", lang, &[P1, P2], "T(φ and ψ) <-> T φ and T ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(t_(&Formula::and(p.clone(), r.clone())), Formula::and(t_(p), t_(r))))
        }),
        schema("KF4b", lang, &[P1, P2], "F(φ and ψ) <-> F φ or F ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(f_(&Formula::and(p.clone(), r.clone())), Formula::or(f_(p), f_(r))))
        }),
        schema("KF5a", lang, &[PHI], "T(forall v φ) <-> forall t T φ(t)", |sys, a| {
            let phi = a[0].phi();
            let all = Formula::forall(phi.var.clone(), phi.body.clone());
            Ok(iff(t_(&all), all_instances(sys, phi, |f| t_(&f))))
        }),
        schema("KF5b", lang, &[PHI], "T(exists v φ) <-> exists t T φ(t)", |sys, a| {
            let phi = a[0].phi();
            let ex = Formula::exists(phi.var.clone(), phi.body.clone());
            Ok(iff(t_(&ex), some_instance(sys, phi, |f| t_(&f))))
        }),
    ]
}

fn cons() -> Schema {
    schema("Cons", Language::Truth, &[S], "F φ -> not T φ", |_, a| {
        Ok(Formula::imp(f_(a[0].s()), not(t_(a[0].s()))))
    })
}

fn comp() -> Schema {
    schema("Comp", Language::Truth, &[S], "not T φ -> F φ", |_, a| {
        Ok(Formula::imp(not(t_(a[0].s())), f_(a[0].s())))
    })
}

/// T1 and T4–T6, shared by CKF and CD⁺.
fn compositional(lang: Language) -> Vec<Schema> {
    vec![
        schema("T1", lang, &[TS, TT_], "T(s = t) <-> s = t", |_, a| {
            let e = eq(a[0].t(), a[1].t());
            Ok(iff(t_(&e), e))
        }),
        schema("T4", lang, &[S], "T(not φ) <-> not T φ", |_, a| {
            Ok(iff(f_(a[0].s()), not(t_(a[0].s()))))
        }),
        schema("T5", lang, &[P1, P2], "T(φ and ψ) <-> T φ and T ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(t_(&Formula::and(p.clone(), r.clone())), Formula::and(t_(p), t_(r))))
        }),
        schema("T6", lang, &[PHI], "T(forall v φ) <-> forall t T φ(t)", |sys, a| {
            let phi = a[0].phi();
            let all = Formula::forall(phi.var.clone(), phi.body.clone());
            Ok(iff(t_(&all), all_instances(sys, phi, |f| t_(&f))))
        }),
    ]
}

fn r1(lang: Language) -> Schema {
    schema("R1", lang, &[PHI, TS, TT_], "s = t -> (T φ(s) <-> T φ(t))", |_, a| {
        let (phi, s, t) = (a[0].phi(), a[1].t(), a[2].t());
        Ok(Formula::imp(eq(s, t), iff(t_(&phi.apply(s)), t_(&phi.apply(t)))))
    })
}

fn t14_forward() -> Schema {
    schema("T14-forward", Language::Truth, &[ST], "TTT t -> TT t", |_, a| {
        let t = a[0].t();
        Ok(Formula::imp(Formula::true_of(tt(t)), tt(t)))
    })
}

fn t14_converse() -> Schema {
    schema("T14-converse", Language::Truth, &[ST], "TT t -> TTT t", |_, a| {
        let t = a[0].t();
        Ok(Formula::imp(tt(t), Formula::true_of(tt(t))))
    })
}

/// T7–T15 of CKF: the inner Kripkean layer.
fn inner_layer() -> Vec<Schema> {
    let l = Language::Truth;
    let mut t14 = schema("T14", l, &[ST], "TTT t <-> TT t", |_, a| {
        let t = a[0].t();
        Ok(iff(Formula::true_of(tt(t)), tt(t)))
    });
    t14.alias = None;
    vec![
        schema("T7", l, &[TS, TT_], "TT(s = t) <-> s = t", |_, a| {
            let e = eq(a[0].t(), a[1].t());
            Ok(iff(tt_(&e), e))
        }),
        schema("T8", l, &[TS, TT_], "TF(s = t) <-> not s = t", |_, a| {
            let e = eq(a[0].t(), a[1].t());
            Ok(iff(tf_(&e), not(e)))
        }),
        schema("T9", l, &[S], "TT φ <-> TT not not φ", |_, a| {
            let p = a[0].s();
            Ok(iff(tt_(p), tt_(&not(not(p.clone())))))
        }),
        schema("T10", l, &[P1, P2], "TT(φ and ψ) <-> TT φ and TT ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(tt_(&Formula::and(p.clone(), r.clone())), Formula::and(tt_(p), tt_(r))))
        }),
        schema("T11", l, &[P1, P2], "TF(φ and ψ) <-> TF φ or TF ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(tf_(&Formula::and(p.clone(), r.clone())), Formula::or(tf_(p), tf_(r))))
        }),
        schema("T12", l, &[PHI], "TT(forall v φ) <-> T(forall t T φ(t))", |sys, a| {
            let phi = a[0].phi();
            let all = Formula::forall(phi.var.clone(), phi.body.clone());
            Ok(iff(tt_(&all), t_(&all_instances(sys, phi, |f| t_(&f)))))
        }),
        schema("T13", l, &[PHI], "TF(forall v φ) <-> T(exists t F φ(t))", |sys, a| {
            let phi = a[0].phi();
            let all = Formula::forall(phi.var.clone(), phi.body.clone());
            Ok(iff(tf_(&all), t_(&some_instance(sys, phi, |f| f_(&f)))))
        }),
        t14,
        schema("T15", l, &[ST], "TFT t <-> TF t", |sys, a| {
            let t = a[0].t();
            Ok(iff(tf_(&truth(t)), tf(sys, t)?))
        }),
    ]
}

fn tdel() -> Schema {
    let mut s = schema("TDel", Language::Truth, &[ST], "TT t -> T t", |_, a| {
        let t = a[0].t();
        Ok(Formula::imp(tt(t), truth(t)))
    });
    s.alias = Some("T16");
    s
}

fn trep() -> Schema {
    schema("TRep", Language::Truth, &[ST], "T t -> TT t", |_, a| {
        let t = a[0].t();
        Ok(Formula::imp(truth(t), tt(t)))
    })
}

fn tsym() -> Schema {
    schema("TSym", Language::Truth, &[ST, SS], "(TT t -> T t) or (T s -> TT s)", |_, a| {
        let (t, s) = (a[0].t(), a[1].t());
        Ok(Formula::or(
            Formula::imp(tt(t), truth(t)),
            Formula::imp(truth(s), tt(s)),
        ))
    })
}

fn ckf_core() -> Vec<Schema> {
    let mut out = compositional(Language::Truth);
    out.extend(inner_layer());
    out
}

fn ckf_derived() -> Vec<Schema> {
    let l = Language::Truth;
    vec![
        schema("TF-TTF", l, &[ST], "TF t <-> TTF t", |sys, a| {
            let t = a[0].t();
            let ft = truth(&negterm(sys, t)?);
            Ok(iff(tf(sys, t)?, tt_(&ft)))
        }),
        schema("TCons", l, &[S], "TF φ -> not TT φ", |_, a| {
            Ok(Formula::imp(tf_(a[0].s()), not(tt_(a[0].s()))))
        }),
        schema("Tdisj", l, &[P1, P2], "TT(φ or ψ) <-> TT φ or TT ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(tt_(&Formula::or(p.clone(), r.clone())), Formula::or(tt_(p), tt_(r))))
        }),
        schema("Fdisj", l, &[P1, P2], "TF(φ or ψ) <-> TF φ and TF ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(tf_(&Formula::or(p.clone(), r.clone())), Formula::and(tf_(p), tf_(r))))
        }),
    ]
}

fn cdplus() -> Vec<Schema> {
    let l = Language::Det;
    let mut out = compositional(l);
    out.insert(
        1,
        schema("T2+", l, &[ST], "D t <-> T(D t)", |_, a| {
            let d = Formula::det(a[0].t().clone());
            Ok(iff(d.clone(), t_(&d)))
        }),
    );
    out.insert(
        2,
        schema("T3", l, &[ST], "D t -> (TT t <-> T t)", |_, a| {
            let t = a[0].t();
            Ok(Formula::imp(Formula::det(t.clone()), iff(tt(t), truth(t))))
        }),
    );
    out.extend([
        schema("D1", l, &[TS, TT_], "D(s = t)", |_, a| Ok(d_(&eq(a[0].t(), a[1].t())))),
        schema("D2", l, &[ST], "D(T t) <-> D t", |_, a| {
            let t = a[0].t();
            Ok(iff(d_(&truth(t)), Formula::det(t.clone())))
        }),
        schema("D3", l, &[ST], "D(D t) <-> D t", |_, a| {
            let t = a[0].t();
            let d = Formula::det(t.clone());
            Ok(iff(d_(&d), d))
        }),
        schema("D4", l, &[S], "D(not φ) <-> D φ", |_, a| {
            let p = a[0].s();
            Ok(iff(d_(&not(p.clone())), d_(p)))
        }),
        schema(
            "D5",
            l,
            &[P1, P2],
            "D(φ and ψ) <-> (D φ and D ψ) or (D φ and F φ) or (D ψ and F ψ)",
            |_, a| {
                let (p, r) = (a[0].s(), a[1].s());
                let rhs = Formula::or(
                    Formula::or(
                        Formula::and(d_(p), d_(r)),
                        Formula::and(d_(p), f_(p)),
                    ),
                    Formula::and(d_(r), f_(r)),
                );
                Ok(iff(d_(&Formula::and(p.clone(), r.clone())), rhs))
            },
        ),
        schema(
            "D6",
            l,
            &[PHI],
            "D(forall v φ) <-> forall t D φ(t) or exists t (D φ(t) and F φ(t))",
            |sys, a| {
                let phi = a[0].phi();
                let all = Formula::forall(phi.var.clone(), phi.body.clone());
                let rhs = Formula::or(
                    all_instances(sys, phi, |f| d_(&f)),
                    some_instance(sys, phi, |f| Formula::and(d_(&f), f_(&f))),
                );
                Ok(iff(d_(&all), rhs))
            },
        ),
        r1(l),
        schema("R2", l, &[PHI, TS, TT_], "s = t -> (D φ(s) <-> D φ(t))", |_, a| {
            let (phi, s, t) = (a[0].phi(), a[1].t(), a[2].t());
            Ok(Formula::imp(eq(s, t), iff(d_(&phi.apply(s)), d_(&phi.apply(t)))))
        }),
    ]);
    out
}

fn rts() -> Schema {
    schema("RTS", Language::Det, &[S], "D φ -> (T φ <-> φ)", |_, a| {
        let p = a[0].s();
        Ok(Formula::imp(d_(p), iff(t_(p), p.clone())))
    })
}

fn cd_dt() -> Schema {
    schema("CD-DT", Language::Det, &[S], "TT φ or TF φ -> D φ", |_, a| {
        let p = a[0].s();
        Ok(Formula::imp(Formula::or(tt_(p), tf_(p)), d_(p)))
    })
}

fn sentencehood() -> Schema {
    schema("Sent", Language::Truth, &[TT_], "TT t -> Sent(t)", |sys, a| {
        let t = a[0].t();
        Ok(Formula::imp(tt(t), sent(sys, t)?))
    })
}

fn cons_equiv() -> Vec<Schema> {
    let l = Language::Truth;
    vec![
        schema("CE-i", l, &[TT_], "TT t -> T t", |_, a| {
            let t = a[0].t();
            Ok(Formula::imp(tt(t), truth(t)))
        }),
        schema("CE-ii", l, &[TT_], "TF t -> not TT t", |sys, a| {
            let t = a[0].t();
            Ok(Formula::imp(tf(sys, t)?, not(tt(t))))
        }),
        schema("CE-iii", l, &[TT_], "TFT t -> FT t", |_, a| {
            let t = a[0].t();
            Ok(Formula::imp(tf_(&truth(t)), f_(&truth(t))))
        }),
    ]
}

fn typed_layer() -> Vec<Schema> {
    let l = Language::Typed;
    let bt = |f: &Formula| Formula::Typed(q(f));
    let _ = bt;
    vec![
        schema("TT1a", l, &[TS, TT_], "TT(s = t) <-> s = t", |_, a| {
            let e = eq(a[0].t(), a[1].t());
            Ok(iff(Formula::Typed(q(&e)), e))
        }),
        schema("TT1b", l, &[TT_], "TT(T t) <-> T t", |_, a| {
            let t = a[0].t();
            Ok(iff(Formula::Typed(q(&truth(t))), truth(t)))
        }),
        schema("TT2", l, &[S], "TT(not φ) <-> not TT φ", |_, a| {
            let p = a[0].s();
            Ok(iff(Formula::Typed(q(&not(p.clone()))), not(Formula::Typed(q(p)))))
        }),
        schema("TT3", l, &[P1, P2], "TT(φ and ψ) <-> TT φ and TT ψ", |_, a| {
            let (p, r) = (a[0].s(), a[1].s());
            Ok(iff(
                Formula::Typed(q(&Formula::and(p.clone(), r.clone()))),
                Formula::and(Formula::Typed(q(p)), Formula::Typed(q(r))),
            ))
        }),
        schema("TT4", l, &[PHI], "TT(forall v φ) <-> forall t TT φ(t)", |sys, a| {
            let phi = a[0].phi();
            let all = Formula::forall(phi.var.clone(), phi.body.clone());
            Ok(iff(
                Formula::Typed(q(&all)),
                all_instances(sys, phi, |f| Formula::Typed(q(&f))),
            ))
        }),
    ]
}

/// Principles that CD⁺ leaves unproved, stated for truth-language codes.
fn irregular() -> Vec<Schema> {
    let core = inner_layer();
    let pick = |id: &str| core.iter().find(|s| s.id == id).cloned().expect("in catalog");
    vec![
        t14_forward(),
        t14_converse(),
        pick("T9"),
        pick("T10"),
        pick("T11"),
        pick("T12"),
        pick("T13"),
    ]
}

pub const THEORIES: &[(&str, &str)] = &[
    ("kf-cons", "KF with Cons"),
    ("kf-comp", "KF with Comp"),
    ("ckf", "classical closure of KF with Cons"),
    ("ckf-cp", "CKF with TRep in place of TDel"),
    ("ckf-sym", "CKF with TSym in place of TDel"),
    ("ckf-derived", "theorems derivable in CKF"),
    ("cdplus", "CD+ with primitive D"),
    ("cdplus-t-cons", "CD+ with D defined as TT or TF"),
    ("cdplus-t-comp", "CD+ with D defined as not TT or not TF"),
    ("cdplus-t-sym", "CD+ with D defined as the conjunction of both"),
    ("rts", "restricted T-schema"),
    ("rts-t-cons", "restricted T-schema with D defined as TT or TF"),
    ("cd-dt", "TT or TF implies D"),
    ("cd-irregular", "principles CD+ does not prove"),
    ("sentencehood", "only sentences are truly true"),
    ("cons-equiv", "three consistency statements"),
    ("ct-kf-cons", "typed truth over KF with Cons"),
];

/// The schemas of a theory.
pub fn catalog(id: &str) -> Result<Theory> {
    let theory = |language, schemas: Vec<Schema>| Theory {
        id: id.to_string(),
        language,
        schemas,
        semantic_only: vec!["induction"],
        translation: None,
    };
    let (base, variant) = match id.split_once("-t-") {
        Some((b, v)) => (b, Some(v.parse::<Variant>().map_err(|_| Error::UnknownTheory(id.into()))?)),
        None => (id, None),
    };
    let mut out = match base {
        "kf-cons" => theory(Language::Truth, [kf(Language::Truth), vec![cons()]].concat()),
        "kf-comp" => theory(Language::Truth, [kf(Language::Truth), vec![comp()]].concat()),
        "ckf" => theory(Language::Truth, [ckf_core(), vec![tdel(), r1(Language::Truth)]].concat()),
        "ckf-cp" => theory(Language::Truth, [ckf_core(), vec![trep(), r1(Language::Truth)]].concat()),
        "ckf-sym" => theory(Language::Truth, [ckf_core(), vec![tsym(), r1(Language::Truth)]].concat()),
        "ckf-derived" => theory(Language::Truth, ckf_derived()),
        "cdplus" => theory(Language::Det, cdplus()),
        "rts" => theory(Language::Det, vec![rts()]),
        "cd-dt" => theory(Language::Det, vec![cd_dt()]),
        "cd-irregular" => theory(Language::Truth, irregular()),
        "sentencehood" => theory(Language::Truth, vec![sentencehood()]),
        "cons-equiv" => theory(Language::Truth, cons_equiv()),
        "ct-kf-cons" => theory(
            Language::Typed,
            [kf(Language::Typed), vec![cons()], typed_layer()].concat(),
        ),
        _ => return Err(Error::UnknownTheory(id.into())),
    };
    if let Some(v) = variant {
        if out.language != Language::Det || !THEORIES.iter().any(|(t, _)| *t == id) {
            return Err(Error::UnknownTheory(id.into()));
        }
        out.translation = Some(v);
    }
    Ok(out)
}

/// Looks a schema up by id (or alias) across all catalogs, or as
/// `theory:schema`.
pub fn find_schema(id: &str) -> Result<Schema> {
    if let Some((t, s)) = id.split_once(':') {
        return catalog(t)?
            .schemas
            .into_iter()
            .find(|x| x.id == s || x.alias == Some(s))
            .ok_or_else(|| Error::UnknownSchema(id.into()));
    }
    for (t, _) in THEORIES {
        if let Some(s) = catalog(t)?
            .schemas
            .into_iter()
            .find(|x| x.id == id || x.alias == Some(id))
        {
            return Ok(s);
        }
    }
    Err(Error::UnknownSchema(id.into()))
}

fn allowed(lang: Language, f: &Formula) -> bool {
    match lang {
        Language::Det => matches!(f.language(), Language::Truth | Language::Det),
        _ => f.language() == Language::Truth,
    }
}

enum Candidates<'a> {
    Sentences(Vec<&'a Formula>),
    Formulas(Vec<&'a OpenFormula>),
    Terms(Vec<&'a Term>),
}

impl<'a> Candidates<'a> {
    fn len(&self) -> usize {
        match self {
            Candidates::Sentences(v) => v.len(),
            Candidates::Formulas(v) => v.len(),
            Candidates::Terms(v) => v.len(),
        }
    }

    fn get(&self, i: usize) -> Arg<'a> {
        match self {
            Candidates::Sentences(v) => Arg::Sentence(v[i]),
            Candidates::Formulas(v) => Arg::Formula(v[i]),
            Candidates::Terms(v) => Arg::Term(v[i]),
        }
    }
}

fn candidates<'a>(sys: &'a SentenceSystem, lang: Language, kind: MetaKind) -> Candidates<'a> {
    match kind {
        MetaKind::Sentence => {
            Candidates::Sentences(sys.sentence_pool.iter().filter(|f| allowed(lang, f)).collect())
        }
        MetaKind::PairSentence => Candidates::Sentences(
            sys.level0().filter(|f| allowed(lang, f)).take(PAIR_POOL).collect(),
        ),
        MetaKind::Formula => {
            Candidates::Formulas(sys.formula_pool.iter().filter(|p| allowed(lang, &p.body)).collect())
        }
        MetaKind::Term => Candidates::Terms(sys.term_pool.iter().collect()),
        MetaKind::SentenceTerm => Candidates::Terms(
            sys.term_pool
                .iter()
                .filter(|t| matches!(sys.denote(t), Ok(Denotation::Sentence(f)) if allowed(lang, f)))
                .collect(),
        ),
    }
}

/// Every instance of a schema over the pools, first metavariable varying
/// slowest.
pub fn instantiate(s: &Schema, sys: &SentenceSystem) -> Result<Vec<Formula>> {
    let cands: Vec<Candidates> = s
        .metavars
        .iter()
        .map(|m| candidates(sys, s.language, m.kind))
        .collect();
    let total = cands.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    let total = match total {
        Some(n) if n <= MAX_INSTANCES => n,
        _ => {
            return Err(Error::PoolBudgetExceeded {
                what: "schema instances",
                cap: MAX_INSTANCES,
            })
        }
    };
    let mut out = Vec::with_capacity(total);
    let mut args = Vec::with_capacity(cands.len());
    for mut i in 0..total {
        args.clear();
        let mut idx = vec![0; cands.len()];
        for (k, c) in cands.iter().enumerate().rev() {
            idx[k] = i % c.len();
            i /= c.len();
        }
        args.extend(cands.iter().zip(&idx).map(|(c, &j)| c.get(j)));
        out.push(s.build(sys, &args)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fragment {
    pub sentences: usize,
    pub terms: usize,
    pub formulas: usize,
    pub depth: usize,
}

impl Fragment {
    pub fn of(sys: &SentenceSystem) -> Self {
        Fragment {
            sentences: sys.sentence_pool.len(),
            terms: sys.term_pool.len(),
            formulas: sys.formula_pool.len(),
            depth: sys.depth,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaResult {
    pub id: String,
    pub instances: usize,
    pub failures: Vec<String>,
    pub failure_count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub theory: String,
    pub model: String,
    pub fragment: Fragment,
    pub schemas: Vec<SchemaResult>,
    pub verdict: Verdict,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// The first failing instance of a schema, if any.
    pub fn first_failure(&self, schema: &str) -> Option<&str> {
        self.schemas
            .iter()
            .find(|s| s.id == schema)
            .and_then(|s| s.failures.first())
            .map(String::as_str)
    }

    pub fn failing_schemas(&self) -> Vec<&str> {
        self.schemas
            .iter()
            .filter(|s| s.failure_count > 0)
            .map(|s| s.id.as_str())
            .collect()
    }

    pub fn instance_count(&self) -> usize {
        self.schemas.iter().map(|s| s.instances).sum()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "theory {}\nmodel {}\nfragment: {} sentences, {} terms, {} formulas, depth {}\n",
            self.theory,
            self.model,
            self.fragment.sentences,
            self.fragment.terms,
            self.fragment.formulas,
            self.fragment.depth
        );
        for s in &self.schemas {
            out.push_str(&format!(
                "  {:<14} {:>7} instances  {} failures\n",
                s.id, s.instances, s.failure_count
            ));
            for f in &s.failures {
                out.push_str(&format!("      {f}\n"));
            }
        }
        out.push_str(&format!("verdict {}\n", self.verdict));
        out
    }
}

/// How instances are mapped before evaluation.
enum Prepare {
    None,
    Delta(Delta),
    Dual(Dual),
}

impl Prepare {
    fn apply(&self, f: Formula) -> Result<Formula> {
        match self {
            Prepare::None => Ok(f),
            Prepare::Delta(d) => d.apply(&f),
            Prepare::Dual(c) => c.apply(&f),
        }
    }
}

fn run_check(
    m: &ClassicalModel,
    eval_in: &ClassicalModel,
    theory: &Theory,
    prepare: &Prepare,
    label: String,
    exec: Exec,
) -> Result<CheckReport> {
    let sys = m.system();
    let mut schemas = Vec::new();
    for s in &theory.schemas {
        let instances = instantiate(s, sys)?;
        let outcomes = exec.map(&instances, |f| -> Result<Option<String>> {
            let g = prepare.apply(f.clone())?;
            Ok(if eval_in.eval(&g)? { None } else { Some(f.to_string()) })
        });
        let mut failures = Vec::new();
        let mut failure_count = 0;
        for o in outcomes {
            if let Some(f) = o? {
                failure_count += 1;
                if failures.len() < FAILURES_SHOWN {
                    failures.push(f);
                }
            }
        }
        schemas.push(SchemaResult {
            id: s.id.to_string(),
            instances: instances.len(),
            failures,
            failure_count,
        });
    }
    let verdict = if schemas.iter().all(|s| s.failure_count == 0) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CheckReport {
        theory: theory.id.clone(),
        model: label,
        fragment: Fragment::of(sys),
        schemas,
        verdict,
    })
}

/// Checks every instance of a theory in a model.
pub fn check(m: &ClassicalModel, theory_id: &str) -> Result<CheckReport> {
    check_with(m, theory_id, Exec::default())
}

pub fn check_with(m: &ClassicalModel, theory_id: &str, exec: Exec) -> Result<CheckReport> {
    let theory = catalog(theory_id)?;
    match theory.translation {
        None => {
            if !m.language().includes(theory.language) {
                return Err(Error::Language(format!(
                    "{} is stated in {}, the model interprets {}",
                    theory.id,
                    theory.language,
                    m.language()
                )));
            }
            run_check(m, m, &theory, &Prepare::None, m.describe(), exec)
        }
        Some(v) => {
            let fp = match m.fixed_point() {
                Some(fp) if m.is_closure() => fp,
                _ => {
                    return Err(Error::PreconditionViolated(format!(
                        "{} is checked in closure models only",
                        theory.id
                    )))
                }
            };
            let delta = Delta::new(m.system(), v)?;
            let extended = class_extension(delta.system(), fp, v)?;
            let target = ClassicalModel::closure(delta.system(), &extended);
            run_check(m, &target, &theory, &Prepare::Delta(delta), m.describe(), exec)
        }
    }
}

/// Checks the c-image of a theory: each instance `A` is replaced by `c(A)`
/// and evaluated in the closure of the dual fixed point.
pub fn check_dual(m: &ClassicalModel, theory_id: &str, exec: Exec) -> Result<CheckReport> {
    let theory = catalog(theory_id)?;
    let fp = match m.fixed_point() {
        Some(fp) if m.is_closure() && theory.translation.is_none() && theory.language == Language::Truth => fp,
        _ => {
            return Err(Error::PreconditionViolated(
                "the dual check needs a closure model and a truth-language theory".into(),
            ))
        }
    };
    let dual = Dual::new(m.system())?;
    let target = ClassicalModel::closure(dual.system(), &fp.dual());
    let label = format!("c-image in {}", target.describe());
    run_check(m, &target, &theory, &Prepare::Dual(dual), label, exec)
}

/// The first failing instance of a schema, in instantiation order.
pub fn find_counterexample(m: &ClassicalModel, schema_id: &str) -> Result<Option<Formula>> {
    let s = find_schema(schema_id)?;
    for f in instantiate(&s, m.system())? {
        if !m.eval(&f)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::PoolConfig;
    use crate::valuation::least_fixed_point;

    #[test]
    fn catalog_sizes() {
        assert_eq!(catalog("ckf").unwrap().schemas.len(), 15);
        assert_eq!(catalog("cdplus").unwrap().schemas.len(), 14);
        let ids: Vec<&str> = catalog("cdplus").unwrap().schemas.iter().map(|s| s.id).collect();
        assert_eq!(
            ids,
            ["T1", "T2+", "T3", "T4", "T5", "T6", "D1", "D2", "D3", "D4", "D5", "D6", "R1", "R2"]
        );
        assert!(matches!(catalog("X"), Err(Error::UnknownTheory(_))));
        assert!(matches!(catalog("ckf-t-cons"), Err(Error::UnknownTheory(_))));
        assert_eq!(catalog("cdplus-t-sym").unwrap().translation, Some(Variant::Sym));
        for (id, _) in THEORIES {
            let t = catalog(id).unwrap();
            let mut ids: Vec<&str> = t.schemas.iter().map(|s| s.id).collect();
            ids.sort();
            ids.dedup();
            assert_eq!(ids.len(), t.schemas.len(), "duplicate schema in {id}");
        }
        assert_eq!(find_schema("T16").unwrap().id, "TDel");
    }

    #[test]
    fn instance_counts() {
        let text = "base 0 1; name L := not T(L); pool sentence 0 = 1 -> 0 = 0;";
        let s = SentenceSystem::parse(text).unwrap();
        let n = s.sentence_pool.len();
        let t4 = find_schema("ckf:T4").unwrap();
        assert_eq!(instantiate(&t4, &s).unwrap().len(), n);
        let t5 = find_schema("ckf:T5").unwrap();
        assert_eq!(instantiate(&t5, &s).unwrap().len(), n * n);

        let config = PoolConfig {
            quote_quota: 0,
            ..PoolConfig::default()
        };
        let text = "base 0; term a := 0; pool term quote(0 = 0); \
                    pool formula v . v = 0; pool formula v . T(v);";
        let s = SentenceSystem::parse_with(text, Some(0), config).unwrap();
        assert_eq!(s.term_pool.len(), 3);
        let r1 = find_schema("ckf:R1").unwrap();
        assert_eq!(instantiate(&r1, &s).unwrap().len(), 18);
    }

    #[test]
    fn liar_closure_passes_ckf() {
        let s = SentenceSystem::parse("base 0 1; name L := not T(L); depth 1;").unwrap();
        let m = ClassicalModel::closure(&s, &least_fixed_point(&s).unwrap());
        for id in ["ckf", "ckf-derived", "cdplus-t-cons", "sentencehood", "cons-equiv"] {
            let r = check(&m, id).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
        assert!(check(&m, "cdplus").is_err());
        let inner = ClassicalModel::inner(&s, &least_fixed_point(&s).unwrap());
        assert!(check(&inner, "kf-cons").unwrap().passed());
    }

    #[test]
    fn sequential_and_parallel_reports_agree() {
        let s = SentenceSystem::parse("base 0 1; name L := not T(L); depth 1;").unwrap();
        let m = ClassicalModel::closure(&s, &least_fixed_point(&s).unwrap())
            .patch([s.parse_sentence("0 = 0").unwrap()])
            .unwrap();
        let a = check_with(&m, "ckf", Exec::Sequential).unwrap();
        let b = check_with(&m, "ckf", Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(!a.passed());
    }
}
