//! Two-valued models built from fixed points, and satisfaction in them.
//!
//! Every model answers `T`, `D` and `TT` atoms through an oracle on closed
//! terms; connectives, equality and quantifiers are classical, with
//! quantifiers ranging over the term pool.

mod fh;

use std::sync::Arc;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::syntax::{Denotation, Formula, Language, SentenceSystem, Term};
use crate::translations::Delta;
use crate::valuation::{class_extension, FixedPoint, NameAssignment, Valuation, Variant, V4};

pub use fh::{fh_construct, FhOutcome, FhTrace, StagePair};

type Env<'f> = Vec<(&'f str, &'f Term)>;

trait Atoms {
    fn sys(&self) -> &SentenceSystem;

    fn truth(&self, t: &Term) -> Result<bool>;

    fn det(&self, t: &Term) -> Result<bool> {
        Err(Error::Language(format!("D({t}) is not in the model's language")))
    }

    fn typed(&self, t: &Term) -> Result<bool> {
        Err(Error::Language(format!("TT({t}) is not in the model's language")))
    }
}

fn close<'f>(t: &'f Term, env: &[(&'f str, &'f Term)]) -> Result<&'f Term> {
    match t {
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(x, _)| *x == v)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::UnresolvedReference(format!("free variable `{v}`"))),
        other => Ok(other),
    }
}

fn classical<'f, A: Atoms + ?Sized>(a: &'f A, f: &'f Formula, env: &mut Env<'f>) -> Result<bool> {
    Ok(match f {
        Formula::Eq(x, y) => {
            let sys = a.sys();
            sys.denote(close(x, env)?)? == sys.denote(close(y, env)?)?
        }
        Formula::Truth(t) => a.truth(close(t, env)?)?,
        Formula::Det(t) => a.det(close(t, env)?)?,
        Formula::Typed(t) => a.typed(close(t, env)?)?,
        Formula::Not(g) => !classical(a, g, env)?,
        Formula::And(x, y) => classical(a, x, env)? && classical(a, y, env)?,
        Formula::Or(x, y) => classical(a, x, env)? || classical(a, y, env)?,
        Formula::Imp(x, y) => !classical(a, x, env)? || classical(a, y, env)?,
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let universal = matches!(f, Formula::Forall(..));
            for t in &a.sys().term_pool {
                env.push((v, t));
                let r = classical(a, g, env);
                env.pop();
                if r? != universal {
                    return Ok(!universal);
                }
            }
            universal
        }
    })
}

fn satisfies<A: Atoms + ?Sized>(a: &A, f: &Formula) -> Result<bool> {
    classical(a, f, &mut Vec::new())
}

/// `(ℕ, X)`: `T` is read off the fixed point's truth bits.
struct InnerAtoms<'a> {
    val: Valuation<'a>,
}

impl Atoms for InnerAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        self.val.sys
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        Ok(self.val.truth_of(t)?.t())
    }
}

/// Classical satisfaction in `(ℕ, X)`.
pub fn eval_inner(sys: &SentenceSystem, w: &NameAssignment, f: &Formula) -> Result<bool> {
    satisfies(
        &InnerAtoms {
            val: Valuation::new(sys, w),
        },
        f,
    )
}

fn denoted_sentence<'a>(sys: &'a SentenceSystem, t: &'a Term, langs: &[Language]) -> Result<Option<&'a Formula>> {
    Ok(match sys.denote(t)? {
        Denotation::Sentence(f) if langs.contains(&f.language()) => Some(f),
        _ => None,
    })
}

/// Membership in the classical closure 𝕋_X.
fn closure_member(sys: &SentenceSystem, w: &NameAssignment, t: &Term) -> Result<bool> {
    match denoted_sentence(sys, t, &[Language::Truth])? {
        Some(f) => eval_inner(sys, w, f),
        None => Ok(false),
    }
}

struct ClosureAtoms<'a> {
    sys: &'a SentenceSystem,
    w: &'a NameAssignment,
}

impl Atoms for ClosureAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        self.sys
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        closure_member(self.sys, self.w, t)
    }
}

struct TypedAtoms<'a> {
    val: Valuation<'a>,
}

impl Atoms for TypedAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        self.val.sys
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        Ok(self.val.truth_of(t)?.t())
    }

    fn typed(&self, t: &Term) -> Result<bool> {
        closure_member(self.val.sys, self.val.w, t)
    }
}

/// Shared part of the δ-emulated models: values of δ-translations in the
/// extended system.
struct DeltaView<'a> {
    delta: &'a Delta,
    w: &'a NameAssignment,
    variant: Variant,
}

impl DeltaView<'_> {
    fn val(&self) -> Valuation<'_> {
        Valuation::new(self.delta.system(), self.w)
    }

    /// `V(δφ)` for the denoted sentence, N for anything else.
    fn value(&self, t: &Term) -> Result<V4> {
        let sys = self.delta.system();
        match denoted_sentence(sys, t, &[Language::Truth, Language::Det])? {
            Some(f) => self.val().value(&self.delta.apply(f)?),
            None => Ok(V4::N),
        }
    }

    fn det(&self, t: &Term) -> Result<bool> {
        Ok(self.variant.determinate(self.value(t)?))
    }
}

struct CdAtoms<'a> {
    view: DeltaView<'a>,
}

impl Atoms for CdAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        self.view.delta.system()
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        let sys = self.view.delta.system();
        match denoted_sentence(sys, t, &[Language::Truth, Language::Det])? {
            Some(f) => eval_inner(sys, self.view.w, &self.view.delta.apply(f)?),
            None => Ok(false),
        }
    }

    fn det(&self, t: &Term) -> Result<bool> {
        self.view.det(t)
    }
}

/// `(ℕ, D, T_B)`: `T` holds of B and of the determinately true sentences.
struct TbAtoms<'a> {
    view: &'a DeltaView<'a>,
    b: &'a Formula,
}

impl Atoms for TbAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        self.view.delta.system()
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        let sys = self.view.delta.system();
        match denoted_sentence(sys, t, &[Language::Truth, Language::Det])? {
            Some(f) if f == self.b => Ok(true),
            Some(_) => Ok(self.view.value(t)? == V4::T),
            None => Ok(false),
        }
    }

    fn det(&self, t: &Term) -> Result<bool> {
        self.view.det(t)
    }
}

/// `(ℕ, D, 𝕋_B)`: `T` is satisfaction in `(ℕ, D, T_B)`.
struct LemmaBAtoms<'a> {
    tb: TbAtoms<'a>,
}

impl Atoms for LemmaBAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        self.tb.sys()
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        let sys = self.tb.sys();
        match denoted_sentence(sys, t, &[Language::Truth, Language::Det])? {
            Some(f) => satisfies(&self.tb, f),
            None => Ok(false),
        }
    }

    fn det(&self, t: &Term) -> Result<bool> {
        self.tb.det(t)
    }
}

struct PatchedAtoms<'a> {
    base: &'a ClassicalModel,
    toggles: &'a IndexSet<Formula>,
}

impl Atoms for PatchedAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        self.base.system()
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        let flipped = match self.base.system().denote(t)? {
            Denotation::Sentence(f) => self.toggles.contains(f),
            Denotation::Base(_) => false,
        };
        Ok(self.base.truth_atom(t)? ^ flipped)
    }

    fn det(&self, t: &Term) -> Result<bool> {
        self.base.det_atom(t)
    }

    fn typed(&self, t: &Term) -> Result<bool> {
        self.base.typed_atom(t)
    }
}

#[derive(Clone)]
enum Kind {
    Inner {
        sys: Arc<SentenceSystem>,
        fp: FixedPoint,
    },
    Closure {
        sys: Arc<SentenceSystem>,
        fp: FixedPoint,
    },
    Patched {
        base: Box<ClassicalModel>,
        toggles: IndexSet<Formula>,
    },
    Cd {
        delta: Arc<Delta>,
        fp: FixedPoint,
        extended: NameAssignment,
    },
    LemmaB {
        delta: Arc<Delta>,
        fp: FixedPoint,
        extended: NameAssignment,
        b: Formula,
    },
    Typed {
        sys: Arc<SentenceSystem>,
        fp: FixedPoint,
    },
    Fh {
        fh: Arc<fh::Stages>,
        stage: usize,
    },
}

/// A two-valued structure over the standard base with interpretations of
/// `T`, and where applicable `D` or `TT`.
#[derive(Clone)]
pub struct ClassicalModel {
    kind: Kind,
}

impl std::fmt::Debug for ClassicalModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.describe())
    }
}

fn delta_model(sys: &SentenceSystem, fp: &FixedPoint, variant: Variant) -> Result<(Arc<Delta>, NameAssignment)> {
    let delta = Delta::new(sys, variant)?;
    let extended = class_extension(delta.system(), fp, variant)?.assignment;
    Ok((Arc::new(delta), extended))
}

impl ClassicalModel {
    pub fn inner(sys: &SentenceSystem, fp: &FixedPoint) -> Self {
        ClassicalModel {
            kind: Kind::Inner {
                sys: Arc::new(sys.clone()),
                fp: fp.clone(),
            },
        }
    }

    pub fn closure(sys: &SentenceSystem, fp: &FixedPoint) -> Self {
        ClassicalModel {
            kind: Kind::Closure {
                sys: Arc::new(sys.clone()),
                fp: fp.clone(),
            },
        }
    }

    /// Primitive `D` emulated through δ over the fixed point.
    pub fn cd(sys: &SentenceSystem, fp: &FixedPoint, variant: Variant) -> Result<Self> {
        let (delta, extended) = delta_model(sys, fp, variant)?;
        Ok(ClassicalModel {
            kind: Kind::Cd {
                delta,
                fp: fp.clone(),
                extended,
            },
        })
    }

    /// `(ℕ, D, 𝕋_B)` with `T_B` the determinate truths plus `b`. Fails
    /// when `b` is determinate.
    pub fn lemma_b(sys: &SentenceSystem, fp: &FixedPoint, variant: Variant, b: &Formula) -> Result<Self> {
        if !b.is_sentence() || !matches!(b.language(), Language::Truth | Language::Det) {
            return Err(Error::PreconditionViolated(format!(
                "`{b}` is not a sentence of the determinateness language"
            )));
        }
        let (delta, extended) = delta_model(sys, fp, variant)?;
        let view = DeltaView {
            delta: &delta,
            w: &extended,
            variant,
        };
        if view.det(&Term::quote(b.clone()))? {
            return Err(Error::PreconditionViolated(format!(
                "`{b}` is {variant}-determinate"
            )));
        }
        Ok(ClassicalModel {
            kind: Kind::LemmaB {
                delta,
                fp: fp.clone(),
                extended,
                b: b.clone(),
            },
        })
    }

    /// `T` is the fixed point, `TT` its classical closure.
    pub fn typed(sys: &SentenceSystem, fp: &FixedPoint) -> Self {
        ClassicalModel {
            kind: Kind::Typed {
                sys: Arc::new(sys.clone()),
                fp: fp.clone(),
            },
        }
    }

    pub(crate) fn fh(stages: Arc<fh::Stages>, stage: usize) -> Self {
        ClassicalModel {
            kind: Kind::Fh { fh: stages, stage },
        }
    }

    /// Flips `T`-membership of each toggled sentence. Only closure models
    /// (patched or not) can be patched.
    pub fn patch(&self, toggles: impl IntoIterator<Item = Formula>) -> Result<Self> {
        match &self.kind {
            Kind::Closure { .. } => Ok(ClassicalModel {
                kind: Kind::Patched {
                    base: Box::new(self.clone()),
                    toggles: toggles.into_iter().collect(),
                },
            }),
            Kind::Patched { base, toggles: old } => {
                let mut set = old.clone();
                for f in toggles {
                    if !set.shift_remove(&f) {
                        set.insert(f);
                    }
                }
                Ok(ClassicalModel {
                    kind: Kind::Patched {
                        base: base.clone(),
                        toggles: set,
                    },
                })
            }
            _ => Err(Error::PreconditionViolated(
                "only closure models can be patched".into(),
            )),
        }
    }

    /// The system the model evaluates in. For δ-emulated models this
    /// includes the δ companions; pools are those of the source system.
    pub fn system(&self) -> &SentenceSystem {
        match &self.kind {
            Kind::Inner { sys, .. } | Kind::Closure { sys, .. } | Kind::Typed { sys, .. } => sys,
            Kind::Patched { base, .. } => base.system(),
            Kind::Cd { delta, .. } | Kind::LemmaB { delta, .. } => delta.system(),
            Kind::Fh { fh, .. } => fh.system(),
        }
    }

    pub fn fixed_point(&self) -> Option<&FixedPoint> {
        match &self.kind {
            Kind::Inner { fp, .. }
            | Kind::Closure { fp, .. }
            | Kind::Typed { fp, .. }
            | Kind::Cd { fp, .. }
            | Kind::LemmaB { fp, .. } => Some(fp),
            Kind::Patched { base, .. } => base.fixed_point(),
            Kind::Fh { .. } => None,
        }
    }

    pub fn language(&self) -> Language {
        match &self.kind {
            Kind::Inner { .. } | Kind::Closure { .. } => Language::Truth,
            Kind::Patched { base, .. } => base.language(),
            Kind::Cd { .. } | Kind::LemmaB { .. } | Kind::Fh { .. } => Language::Det,
            Kind::Typed { .. } => Language::Typed,
        }
    }

    pub fn is_closure(&self) -> bool {
        matches!(self.kind, Kind::Closure { .. })
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Inner { fp, .. } => format!("inner {}", fp.assignment),
            Kind::Closure { fp, .. } => format!("closure {}", fp.assignment),
            Kind::Patched { base, toggles } => {
                let list: Vec<String> = toggles.iter().map(|f| f.to_string()).collect();
                format!("{} toggled at [{}]", base.describe(), list.join("; "))
            }
            Kind::Cd { delta, fp, .. } => format!("cd-{} {}", delta.variant(), fp.assignment),
            Kind::LemmaB { delta, fp, b, .. } => {
                format!("lemma-b-{} {} B = {b}", delta.variant(), fp.assignment)
            }
            Kind::Typed { fp, .. } => format!("typed {}", fp.assignment),
            Kind::Fh { stage, .. } => format!("fh stage {stage}"),
        }
    }

    fn with_atoms<R>(&self, run: impl FnOnce(&dyn Atoms) -> R) -> R {
        match &self.kind {
            Kind::Inner { sys, fp } => run(&InnerAtoms {
                val: Valuation::new(sys, &fp.assignment),
            }),
            Kind::Closure { sys, fp } => run(&ClosureAtoms {
                sys,
                w: &fp.assignment,
            }),
            Kind::Patched { base, toggles } => run(&PatchedAtoms { base, toggles }),
            Kind::Cd { delta, extended, .. } => run(&CdAtoms {
                view: DeltaView {
                    delta,
                    w: extended,
                    variant: delta.variant(),
                },
            }),
            Kind::LemmaB {
                delta, extended, b, ..
            } => {
                let view = DeltaView {
                    delta,
                    w: extended,
                    variant: delta.variant(),
                };
                run(&LemmaBAtoms {
                    tb: TbAtoms { view: &view, b },
                })
            }
            Kind::Typed { sys, fp } => run(&TypedAtoms {
                val: Valuation::new(sys, &fp.assignment),
            }),
            Kind::Fh { fh, stage } => run(&fh::FhAtoms {
                stages: fh,
                stage: *stage,
            }),
        }
    }

    fn truth_atom(&self, t: &Term) -> Result<bool> {
        self.with_atoms(|a| a.truth(t))
    }

    fn det_atom(&self, t: &Term) -> Result<bool> {
        self.with_atoms(|a| a.det(t))
    }

    fn typed_atom(&self, t: &Term) -> Result<bool> {
        self.with_atoms(|a| a.typed(t))
    }

    /// Classical satisfaction of a sentence.
    pub fn eval(&self, f: &Formula) -> Result<bool> {
        if !f.is_sentence() {
            return Err(Error::PreconditionViolated(format!("`{f}` has free variables")));
        }
        self.with_atoms(|a| satisfies(a, f))
    }
}

/// Reads a name assignment back off a model: `t` iff the model satisfies
/// `T(quote(T(quote(body))))`, `f` likewise for the negated body.
pub fn extract_inner(m: &ClassicalModel) -> Result<NameAssignment> {
    let sys = m.system();
    let tt = |f: Formula| Formula::true_of(Formula::true_of(f));
    sys.primary_names()
        .into_iter()
        .map(|n| {
            let body = sys.body(n).expect("declared").clone();
            let t = m.eval(&tt(body.clone()))?;
            let f = m.eval(&tt(Formula::not(body)))?;
            Ok((n.to_string(), V4::from_bits(t, f)))
        })
        .collect()
}

/// `{A ∈ pool : m ⊨ T(quote A)}`.
pub fn extract_internal(m: &ClassicalModel) -> Result<Vec<Formula>> {
    let sys = m.system();
    let mut out = Vec::new();
    for f in &sys.sentence_pool {
        if m.eval(&Formula::true_of(f.clone()))? {
            out.push(f.clone());
        }
    }
    Ok(out)
}

/// `{A ∈ pool : m ⊨ T(quote(T(quote A)))}`.
pub fn extract_deep(m: &ClassicalModel) -> Result<Vec<Formula>> {
    let sys = m.system();
    let mut out = Vec::new();
    for f in &sys.sentence_pool {
        if m.eval(&Formula::true_of(Formula::true_of(f.clone())))? {
            out.push(f.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::least_fixed_point;

    fn liar() -> SentenceSystem {
        SentenceSystem::parse("base 0 1; name L := not T(L);").unwrap()
    }

    fn fp(pairs: &[(&str, V4)]) -> FixedPoint {
        FixedPoint::new_unchecked(pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect())
    }

    #[test]
    fn inner_examples() {
        let s = liar();
        let lfp = least_fixed_point(&s).unwrap();
        let em = s.parse_sentence("not T(L) or not not T(L)").unwrap();
        assert!(eval_inner(&s, &lfp.assignment, &em).unwrap());
        assert!(!eval_inner(&s, &lfp.assignment, &Formula::true_of(em)).unwrap());
        let glut = fp(&[("L", V4::B)]);
        let f = s.parse_sentence("T(L) and T(quote(not T(L)))").unwrap();
        assert!(eval_inner(&s, &glut.assignment, &f).unwrap());
    }

    #[test]
    fn closure_layers() {
        let s = liar();
        let m = ClassicalModel::closure(&s, &least_fixed_point(&s).unwrap());
        assert!(!m.eval(&s.parse_sentence("T(quote(T(L)))").unwrap()).unwrap());
        assert!(m
            .eval(&s.parse_sentence("T(quote(not T(L) or not not T(L)))").unwrap())
            .unwrap());
        assert!(m.eval(&s.parse_sentence("T(quote(0 = 0))").unwrap()).unwrap());
        assert!(!m.eval(&s.parse_sentence("T(0)").unwrap()).unwrap());
        assert!(m.eval(&s.parse_sentence("D(quote(0 = 0))").unwrap()).is_err());
    }

    #[test]
    fn lemma_b_liar_pattern() {
        let s = liar();
        let lfp = least_fixed_point(&s).unwrap();
        let b = s.parse_sentence("T(L)").unwrap();
        let m = ClassicalModel::lemma_b(&s, &lfp, Variant::Cons, &b).unwrap();
        assert!(m.eval(&s.parse_sentence("T(quote(T(quote(T(L)))))").unwrap()).unwrap());
        assert!(!m.eval(&s.parse_sentence("T(quote(T(L)))").unwrap()).unwrap());
        let det = s.parse_sentence("0 = 0").unwrap();
        assert!(matches!(
            ClassicalModel::lemma_b(&s, &lfp, Variant::Cons, &det),
            Err(Error::PreconditionViolated(_))
        ));
        let neg = s.parse_sentence("not not T(L)").unwrap();
        assert!(ClassicalModel::lemma_b(&s, &lfp, Variant::Cons, &neg).is_ok());
    }

    #[test]
    fn typed_split() {
        let s = liar();
        let m = ClassicalModel::typed(&s, &least_fixed_point(&s).unwrap());
        let em = "quote(not T(L) or not not T(L))";
        assert!(m.eval(&s.parse_sentence(&format!("TT({em})")).unwrap()).unwrap());
        assert!(!m.eval(&s.parse_sentence(&format!("T({em})")).unwrap()).unwrap());
    }

    #[test]
    fn cd_det_of_liar() {
        let s = liar();
        let lfp = least_fixed_point(&s).unwrap();
        let m = ClassicalModel::cd(&s, &lfp, Variant::Cons).unwrap();
        assert!(!m.eval(&s.parse_sentence("D(L)").unwrap()).unwrap());
        assert!(m.eval(&s.parse_sentence("D(quote(0 = 1))").unwrap()).unwrap());
        assert!(m.eval(&s.parse_sentence("not T(quote(0 = 1))").unwrap()).unwrap());
    }

    #[test]
    fn patching_flips_membership() {
        let s = liar();
        let m = ClassicalModel::closure(&s, &least_fixed_point(&s).unwrap());
        let em = s.parse_sentence("not T(L) or not not T(L)").unwrap();
        let p = m.patch([em.clone()]).unwrap();
        assert!(!p.eval(&Formula::true_of(em.clone())).unwrap());
        let same = m.patch([]).unwrap();
        for f in &s.sentence_pool {
            assert_eq!(same.eval(f).unwrap(), m.eval(f).unwrap());
        }
        let back = p.patch([em.clone()]).unwrap();
        assert!(back.eval(&Formula::true_of(em)).unwrap());
        assert!(ClassicalModel::inner(&s, &least_fixed_point(&s).unwrap())
            .patch([])
            .is_err());
    }

    #[test]
    fn recovery_and_theories() {
        let s = SentenceSystem::parse(
            "base 0 1; name L := not T(L); pool sentence not T(L) or not not T(L); \
             pool sentence not T(L) and not not T(L);",
        )
        .unwrap();
        let lfp = least_fixed_point(&s).unwrap();
        let m = ClassicalModel::closure(&s, &lfp);
        assert_eq!(extract_inner(&m).unwrap(), lfp.assignment);
        let em = s.parse_sentence("not T(L) or not not T(L)").unwrap();
        let contra = s.parse_sentence("not T(L) and not not T(L)").unwrap();
        assert!(extract_internal(&m).unwrap().contains(&em));
        assert!(!extract_deep(&m).unwrap().contains(&em));
        let glut = fp(&[("L", V4::B)]);
        let g = ClassicalModel::closure(&s, &glut);
        assert_eq!(extract_inner(&g).unwrap(), glut.assignment);
        assert!(extract_deep(&g).unwrap().contains(&contra));
    }
}
