//! Syntactic translations: determinateness elimination δ (three variants),
//! the dual map c, and the typed-truth maps τ, ι, σ.
//!
//! δ and c work on codes as well as on the displayed level, so they descend
//! into quotes. Self-reference through names is handled with companion
//! names added to the system: `ℓ'd<variant>` for δ, `ℓ'c` for c, and
//! `x'n` for the negation of a companion.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::syntax::{
    deep_atoms, deep_has_det, substitute, Formula, Language, NameDef, SentenceSystem, Term,
};
use crate::valuation::Variant;

/// A term denoting the negation of what `t` denotes. Base elements map to
/// themselves, so `T(negterm b)` stays false.
pub fn negterm(sys: &SentenceSystem, t: &Term) -> Result<Term> {
    match sys.resolve_alias(t)? {
        Term::Quote(f) => Ok(Term::quote(Formula::not((**f).clone()))),
        Term::Name(n) => {
            let companion = format!("{n}'n");
            match sys.names.get(&companion) {
                Some(NameDef {
                    negates: Some(of), ..
                }) if of == n => Ok(Term::Name(companion)),
                _ => {
                    let body = sys.body(n).ok_or_else(|| Error::UnresolvedReference(n.clone()))?;
                    Ok(Term::quote(Formula::not(body.clone())))
                }
            }
        }
        Term::Base(b) => Ok(Term::Base(b.clone())),
        Term::Var(v) => Err(Error::PreconditionViolated(format!(
            "cannot negate the open term `{v}`"
        ))),
        Term::Alias(_) => unreachable!("aliases are resolved"),
    }
}

/// `F t`, that is `T(negterm t)`.
pub fn falsity(sys: &SentenceSystem, t: &Term) -> Result<Formula> {
    Ok(Formula::truth(negterm(sys, t)?))
}

/// `TT t`, that is `T(quote(T(t)))`.
pub fn tt(t: &Term) -> Formula {
    Formula::true_of(Formula::truth(t.clone()))
}

/// `TF t`, that is `T(quote(T(negterm t)))`.
pub fn tf(sys: &SentenceSystem, t: &Term) -> Result<Formula> {
    Ok(Formula::true_of(falsity(sys, t)?))
}

/// The defining formula of `D t` for a variant.
pub fn det_definition(sys: &SentenceSystem, variant: Variant, t: &Term) -> Result<Formula> {
    let pos = Formula::or(tt(t), tf(sys, t)?);
    let neg = Formula::or(Formula::not(tt(t)), Formula::not(tf(sys, t)?));
    Ok(match variant {
        Variant::Cons => pos,
        Variant::Comp => neg,
        Variant::Sym => Formula::and(pos, neg),
    })
}

fn occurs_as_argument(f: &Formula, var: &str) -> (bool, bool) {
    let mut in_truth = false;
    let mut in_det = false;
    let mut bound = Vec::new();
    fn walk(f: &Formula, var: &str, bound: &mut Vec<String>, tr: &mut bool, de: &mut bool) {
        let hit = |t: &Term, bound: &Vec<String>| matches!(t, Term::Var(v) if v == var && !bound.iter().any(|b| b == var));
        match f {
            Formula::Eq(..) => {}
            Formula::Truth(t) | Formula::Typed(t) => *tr |= hit(t, bound),
            Formula::Det(t) => *de |= hit(t, bound),
            Formula::Not(g) => walk(g, var, bound, tr, de),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                walk(a, var, bound, tr, de);
                walk(b, var, bound, tr, de);
            }
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                bound.push(v.clone());
                walk(g, var, bound, tr, de);
                bound.pop();
            }
        }
    }
    walk(f, var, &mut bound, &mut in_truth, &mut in_det);
    (in_truth, in_det)
}

/// Replaces a quantifier by the finite conjunction or disjunction of its
/// instances over the term pool.
fn expand(sys: &SentenceSystem, f: &Formula) -> Formula {
    match f {
        Formula::Forall(v, g) => Formula::conj(sys.term_pool.iter().map(|t| substitute(g, v, t))),
        Formula::Exists(v, g) => Formula::disj(sys.term_pool.iter().map(|t| substitute(g, v, t))),
        other => other.clone(),
    }
}

/// Names mentioned anywhere in a formula, quotes included.
fn deep_names(f: &Formula) -> Vec<String> {
    let mut out = Vec::new();
    deep_atoms(f, &mut |a| {
        let terms: Vec<&Term> = match a {
            Formula::Eq(x, y) => vec![x, y],
            Formula::Truth(t) | Formula::Det(t) | Formula::Typed(t) => vec![t],
            _ => vec![],
        };
        for t in terms {
            if let Term::Name(n) = t {
                out.push(n.clone());
            }
        }
    });
    out
}

/// δ for one variant over one system.
pub struct Delta {
    sys: SentenceSystem,
    variant: Variant,
    reaching: HashSet<String>,
    pool_affected: bool,
}

impl Delta {
    pub fn new(sys: &SentenceSystem, variant: Variant) -> Result<Self> {
        let mut reaching: HashSet<String> = HashSet::new();
        loop {
            let before = reaching.len();
            for (n, d) in &sys.names {
                if !reaching.contains(n)
                    && (deep_has_det(&d.body) || deep_names(&d.body).iter().any(|m| reaching.contains(m)))
                {
                    reaching.insert(n.clone());
                }
            }
            if reaching.len() == before {
                break;
            }
        }
        let mut delta = Delta {
            sys: sys.clone(),
            variant,
            reaching,
            pool_affected: false,
        };
        delta.pool_affected = sys.term_pool.iter().any(|t| delta.affected(t));
        let mut reaching: Vec<&String> = delta.reaching.iter().collect();
        reaching.sort_by_key(|n| sys.names.get_index_of(*n));
        let mut pending = Vec::new();
        for n in reaching {
            let comp = delta.companion(n);
            if sys.names.contains_key(&comp) {
                continue;
            }
            if sys.names.contains_key(&format!("{comp}'n")) {
                return Err(Error::Validation(format!("companion name `{comp}'n` is taken")));
            }
            pending.push((n.clone(), comp));
        }
        // Bodies mention the companions, so register the names first.
        let stub = |comp: &String| {
            [
                (comp.clone(), NameDef { body: sys.verum(), negates: None }),
                (
                    format!("{comp}'n"),
                    NameDef { body: Formula::not(sys.verum()), negates: Some(comp.clone()) },
                ),
            ]
        };
        delta.sys = sys.with_names(pending.iter().flat_map(|(_, c)| stub(c)));
        let mut extra = Vec::new();
        for (n, comp) in &pending {
            let body = delta.apply(&sys.names[n].body)?;
            extra.push((comp.clone(), NameDef { body: body.clone(), negates: None }));
            extra.push((
                format!("{comp}'n"),
                NameDef { body: Formula::not(body), negates: Some(comp.clone()) },
            ));
        }
        delta.sys = sys.with_names(extra);
        Ok(delta)
    }

    /// The system extended with the companions δ refers to.
    pub fn system(&self) -> &SentenceSystem {
        &self.sys
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn companion(&self, n: &str) -> String {
        format!("{n}'d{}", self.variant.id())
    }

    fn affected(&self, t: &Term) -> bool {
        match self.sys.resolve_alias(t) {
            Ok(Term::Name(n)) => self.reaching.contains(n),
            Ok(Term::Quote(f)) => {
                deep_has_det(f) || deep_names(f).iter().any(|m| self.reaching.contains(m))
            }
            _ => false,
        }
    }

    fn term(&self, t: &Term) -> Result<Term> {
        if !self.affected(t) {
            return Ok(t.clone());
        }
        Ok(match self.sys.resolve_alias(t)? {
            Term::Name(n) => Term::Name(self.companion(n)),
            Term::Quote(f) => Term::quote(self.apply(f)?),
            other => other.clone(),
        })
    }

    pub fn apply(&self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Eq(..) => f.clone(),
            Formula::Truth(t) => Formula::Truth(self.term(t)?),
            Formula::Det(t) => {
                let t = self.term(t)?;
                det_definition(&self.sys, self.variant, &t)?
            }
            Formula::Typed(_) => {
                return Err(Error::Language(format!("δ is undefined on `{f}`")));
            }
            Formula::Not(g) => Formula::not(self.apply(g)?),
            Formula::And(a, b) => Formula::and(self.apply(a)?, self.apply(b)?),
            Formula::Or(a, b) => Formula::or(self.apply(a)?, self.apply(b)?),
            Formula::Imp(a, b) => Formula::imp(self.apply(a)?, self.apply(b)?),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let (in_truth, in_det) = occurs_as_argument(g, v);
                if in_det || (in_truth && self.pool_affected) {
                    self.apply(&expand(&self.sys, f))?
                } else if matches!(f, Formula::Forall(..)) {
                    Formula::forall(v.clone(), self.apply(g)?)
                } else {
                    Formula::exists(v.clone(), self.apply(g)?)
                }
            }
        })
    }
}

/// The dual map c: `T t` becomes `¬T(negterm t)`, at every level.
pub struct Dual {
    sys: SentenceSystem,
}

impl Dual {
    pub fn new(sys: &SentenceSystem) -> Result<Self> {
        let mut dual = Dual { sys: sys.clone() };
        let mut extra = Vec::new();
        for (n, d) in &sys.names {
            if d.body.language() != Language::Truth || n.ends_with("'c") {
                continue;
            }
            let comp = format!("{n}'c");
            if sys.names.contains_key(&comp) {
                continue;
            }
            extra.push((comp, n.clone(), d.body.clone()));
        }
        // Bodies mention the companions, so register the names first.
        let placeholder = sys.with_names(extra.iter().map(|(c, n, b)| {
            (
                c.clone(),
                NameDef {
                    body: b.clone(),
                    negates: Some(n.clone()),
                },
            )
        }));
        dual.sys = placeholder;
        let mut defs = Vec::new();
        for (c, n, b) in &extra {
            defs.push((
                c.clone(),
                NameDef {
                    body: Formula::not(dual.apply(b)?),
                    negates: Some(n.clone()),
                },
            ));
        }
        dual.sys = sys.with_names(defs);
        Ok(dual)
    }

    /// The system extended with the `ℓ'c` companions.
    pub fn system(&self) -> &SentenceSystem {
        &self.sys
    }

    pub fn apply(&self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Eq(..) => f.clone(),
            Formula::Truth(t) => self.truth(t)?,
            Formula::Det(_) | Formula::Typed(_) => {
                return Err(Error::Language(format!("c is undefined on `{f}`")));
            }
            Formula::Not(g) => Formula::not(self.apply(g)?),
            Formula::And(a, b) => Formula::and(self.apply(a)?, self.apply(b)?),
            Formula::Or(a, b) => Formula::or(self.apply(a)?, self.apply(b)?),
            Formula::Imp(a, b) => Formula::imp(self.apply(a)?, self.apply(b)?),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                if occurs_as_argument(g, v).0 {
                    self.apply(&expand(&self.sys, f))?
                } else if matches!(f, Formula::Forall(..)) {
                    Formula::forall(v.clone(), self.apply(g)?)
                } else {
                    Formula::exists(v.clone(), self.apply(g)?)
                }
            }
        })
    }

    fn truth(&self, t: &Term) -> Result<Formula> {
        Ok(match self.sys.resolve_alias(t)? {
            Term::Name(n) => {
                let comp = format!("{n}'c");
                if self.sys.names.contains_key(&comp) {
                    Formula::not(Formula::truth(Term::Name(comp)))
                } else {
                    Formula::truth(t.clone())
                }
            }
            Term::Quote(g) if g.language() == Language::Truth => {
                Formula::not(Formula::true_of(Formula::not(self.apply(g)?)))
            }
            Term::Var(v) => {
                return Err(Error::PreconditionViolated(format!(
                    "c needs a closed argument, got `{v}`"
                )))
            }
            _ => Formula::truth(t.clone()),
        })
    }
}

/// τ: outer `T` becomes the typed predicate; quotes are untouched.
pub fn tau(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::Eq(..) => f.clone(),
        Formula::Truth(t) => Formula::Typed(t.clone()),
        Formula::Det(_) | Formula::Typed(_) => {
            return Err(Error::Language(format!("τ is undefined on `{f}`")));
        }
        Formula::Not(g) => Formula::not(tau(g)?),
        Formula::And(a, b) => Formula::and(tau(a)?, tau(b)?),
        Formula::Or(a, b) => Formula::or(tau(a)?, tau(b)?),
        Formula::Imp(a, b) => Formula::imp(tau(a)?, tau(b)?),
        Formula::Forall(v, g) => Formula::forall(v.clone(), tau(g)?),
        Formula::Exists(v, g) => Formula::exists(v.clone(), tau(g)?),
    })
}

/// ι on closed terms: codes of sentences outside the truth language become
/// the code of the falsum `b0 = b1`.
pub fn iota(sys: &SentenceSystem, t: &Term) -> Result<Term> {
    let falsum = sys.falsum().ok_or_else(|| {
        Error::PreconditionViolated("ι needs at least two base elements".into())
    })?;
    Ok(match sys.denote(t)? {
        crate::syntax::Denotation::Sentence(f) if f.language() != Language::Truth => {
            Term::quote(falsum)
        }
        _ => t.clone(),
    })
}

/// σ: the typed predicate becomes one layer of `T`, and `T` two.
pub fn sigma(sys: &SentenceSystem, f: &Formula) -> Result<Formula> {
    if sys.falsum().is_none() {
        return Err(Error::PreconditionViolated(
            "σ needs at least two base elements".into(),
        ));
    }
    Ok(match f {
        Formula::Eq(..) => f.clone(),
        Formula::Typed(t) => Formula::Truth(iota(sys, t)?),
        Formula::Truth(t) => Formula::true_of(Formula::Truth(iota(sys, t)?)),
        Formula::Det(_) => {
            return Err(Error::Language(format!("σ is undefined on `{f}`")));
        }
        Formula::Not(g) => Formula::not(sigma(sys, g)?),
        Formula::And(a, b) => Formula::and(sigma(sys, a)?, sigma(sys, b)?),
        Formula::Or(a, b) => Formula::or(sigma(sys, a)?, sigma(sys, b)?),
        Formula::Imp(a, b) => Formula::imp(sigma(sys, a)?, sigma(sys, b)?),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            if occurs_as_argument(g, v).0 {
                sigma(sys, &expand(sys, f))?
            } else if matches!(f, Formula::Forall(..)) {
                Formula::forall(v.clone(), sigma(sys, g)?)
            } else {
                Formula::exists(v.clone(), sigma(sys, g)?)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(text: &str) -> SentenceSystem {
        SentenceSystem::parse(text).unwrap()
    }

    #[test]
    fn delta_cons_on_quote() {
        let s = sys("base 0 1;");
        let d = Delta::new(&s, Variant::Cons).unwrap();
        let f = s.parse_sentence("D(quote(0 = 0))").unwrap();
        let expected = s
            .parse_sentence("T(quote(T(quote(0 = 0)))) or T(quote(T(quote(not 0 = 0))))")
            .unwrap();
        assert_eq!(d.apply(&f).unwrap(), expected);
    }

    #[test]
    fn delta_is_identity_without_det() {
        let s = sys("base 0 1; name L := not T(L); pool formula v . T(v);");
        let d = Delta::new(&s, Variant::Sym).unwrap();
        for f in &s.sentence_pool {
            assert_eq!(&d.apply(f).unwrap(), f);
        }
        assert_eq!(d.system(), &s);
    }

    #[test]
    fn delta_companion_for_self_referential_det() {
        let s = sys("base 0 1; name E := D(E);");
        let d = Delta::new(&s, Variant::Cons).unwrap();
        let body = d.system().body("E'dcons").unwrap();
        let expected = Formula::or(
            tt(&Term::name("E'dcons")),
            Formula::true_of(Formula::truth(Term::name("E'dcons'n"))),
        );
        assert_eq!(body, &expected);
        assert_eq!(
            d.system().names["E'dcons'n"].negates.as_deref(),
            Some("E'dcons")
        );
        assert_eq!(d.system().body("E'dcons").unwrap().language(), Language::Truth);
    }

    #[test]
    fn dual_examples() {
        let s = sys("base 0 1; name L := not T(L);");
        let c = Dual::new(&s).unwrap();
        let eq = s.parse_sentence("0 = 0").unwrap();
        assert_eq!(c.apply(&eq).unwrap(), eq);
        let t = s.parse_sentence("T(quote(0 = 0))").unwrap();
        assert_eq!(
            c.apply(&t).unwrap(),
            s.parse_sentence("not T(quote(not 0 = 0))").unwrap()
        );
        let tl = s.parse_sentence("T(L)").unwrap();
        assert_eq!(c.apply(&tl).unwrap(), Formula::not(Formula::truth(Term::name("L'c"))));
        assert_eq!(c.system().names["L'c"].negates.as_deref(), Some("L"));
    }

    #[test]
    fn tau_and_sigma_examples() {
        let s = sys("base 0 1; name L := not T(L);");
        let f = s.parse_sentence("T(quote(T(L)))").unwrap();
        assert_eq!(
            tau(&f).unwrap(),
            Formula::Typed(Term::quote(Formula::truth(Term::name("L"))))
        );
        let zero = s.parse_sentence("0 = 0").unwrap();
        let typed = Formula::Typed(Term::quote(zero.clone()));
        assert_eq!(sigma(&s, &typed).unwrap(), Formula::true_of(zero.clone()));
        assert_eq!(
            sigma(&s, &Formula::true_of(zero.clone())).unwrap(),
            Formula::true_of(Formula::true_of(zero))
        );
        let odd = Formula::Typed(Term::quote(Formula::det(Term::base("0"))));
        assert_eq!(
            sigma(&s, &odd).unwrap(),
            Formula::true_of(s.falsum().unwrap())
        );
        assert!(sigma(&sys("base 0;"), &odd).is_err());
    }
}
