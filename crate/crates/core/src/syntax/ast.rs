//! Terms and formulas of the object languages.
//!
//! One tree type serves all three languages: the truth language uses only
//! `T`, the determinateness language adds `D`, and the typed language adds
//! the outer truth predicate `TT`. [`Formula::language`] computes which one a
//! sentence belongs to.

use std::fmt;

/// Closed or open terms. Quotation replaces numerals of codes; names give
/// self-reference without a diagonal lemma.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Base(String),
    Name(String),
    Quote(Box<Formula>),
    Alias(String),
    Var(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    /// `T(t)`
    Truth(Term),
    /// `D(t)`
    Det(Term),
    /// `TT(t)`, the typed truth predicate.
    Typed(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Language {
    /// Arithmetic plus `T`.
    #[serde(rename = "L_T")]
    Truth,
    /// Adds the primitive `D`.
    #[serde(rename = "L_D")]
    Det,
    /// Adds the typed predicate `TT` over the truth language.
    #[serde(rename = "L_CT")]
    Typed,
}

impl Language {
    /// Whether sentences of `other` are sentences of `self`.
    pub fn includes(self, other: Language) -> bool {
        self == other || other == Language::Truth
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Language::Truth => "L_T",
            Language::Det => "L_D",
            Language::Typed => "L_CT",
        })
    }
}

impl Term {
    pub fn quote(f: Formula) -> Term {
        Term::Quote(Box::new(f))
    }
    pub fn base(id: impl Into<String>) -> Term {
        Term::Base(id.into())
    }
    pub fn name(id: impl Into<String>) -> Term {
        Term::Name(id.into())
    }
    pub fn var(id: impl Into<String>) -> Term {
        Term::Var(id.into())
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Quote(f) => f.is_sentence(),
            _ => true,
        }
    }
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }
    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }
    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }
    pub fn truth(t: Term) -> Formula {
        Formula::Truth(t)
    }
    /// `T(quote(f))`
    pub fn true_of(f: Formula) -> Formula {
        Formula::Truth(Term::quote(f))
    }
    pub fn det(t: Term) -> Formula {
        Formula::Det(t)
    }
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    /// Left-nested conjunction. Panics on an empty list.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        let first = it.next().expect("conjunction of no formulas");
        it.fold(first, Formula::and)
    }

    /// Left-nested disjunction. Panics on an empty list.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut it = items.into_iter();
        let first = it.next().expect("disjunction of no formulas");
        it.fold(first, Formula::or)
    }

    /// Free variables at the displayed level. Quote payloads are codes and
    /// contribute nothing.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let term = |t: &Term, bound: &Vec<String>, out: &mut Vec<String>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
        };
        match self {
            Formula::Eq(a, b) => {
                term(a, bound, out);
                term(b, bound, out);
            }
            Formula::Truth(t) | Formula::Det(t) | Formula::Typed(t) => term(t, bound, out),
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Language of the displayed (outer) level. A quoted `D`-sentence is a
    /// numeral as far as the enclosing sentence is concerned.
    pub fn language(&self) -> Language {
        let mut det = false;
        let mut typed = false;
        self.visit_atoms(&mut |f| match f {
            Formula::Det(_) => det = true,
            Formula::Typed(_) => typed = true,
            _ => {}
        });
        match (det, typed) {
            (false, false) => Language::Truth,
            (true, false) => Language::Det,
            (false, true) => Language::Typed,
            // Mixed D/TT sentences belong to no declared language; treat them
            // as the typed language so the language checks reject them
            // wherever D is expected.
            (true, true) => Language::Typed,
        }
    }

    pub fn has_det_and_typed(&self) -> bool {
        let mut det = false;
        let mut typed = false;
        self.visit_atoms(&mut |f| match f {
            Formula::Det(_) => det = true,
            Formula::Typed(_) => typed = true,
            _ => {}
        });
        det && typed
    }

    /// Visits every atomic formula at the displayed level.
    pub fn visit_atoms(&self, visit: &mut impl FnMut(&Formula)) {
        match self {
            Formula::Eq(..) | Formula::Truth(_) | Formula::Det(_) | Formula::Typed(_) => visit(self),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.visit_atoms(visit),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.visit_atoms(visit);
                b.visit_atoms(visit);
            }
        }
    }

    /// Terms occurring at the displayed level, in order.
    pub fn outer_terms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        self.push_terms(&mut out);
        out
    }

    fn push_terms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        match self {
            Formula::Eq(a, b) => {
                out.push(a);
                out.push(b);
            }
            Formula::Truth(t) | Formula::Det(t) | Formula::Typed(t) => out.push(t),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => f.push_terms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.push_terms(out);
                b.push_terms(out);
            }
        }
    }

    /// Rewrites `or`, `->` and `exists` into `not`, `and`, `forall`.
    /// Quote payloads are left as they are.
    pub fn normalize(&self) -> Formula {
        match self {
            Formula::Eq(..) | Formula::Truth(_) | Formula::Det(_) | Formula::Typed(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.normalize()),
            Formula::And(a, b) => Formula::and(a.normalize(), b.normalize()),
            Formula::Or(a, b) => Formula::not(Formula::and(
                Formula::not(a.normalize()),
                Formula::not(b.normalize()),
            )),
            Formula::Imp(a, b) => {
                Formula::not(Formula::and(a.normalize(), Formula::not(b.normalize())))
            }
            Formula::Forall(v, f) => Formula::forall(v.clone(), f.normalize()),
            Formula::Exists(v, f) => {
                Formula::not(Formula::forall(v.clone(), Formula::not(f.normalize())))
            }
        }
    }

    /// Number of nodes, counting quote payloads.
    pub fn size(&self) -> usize {
        let term = |t: &Term| match t {
            Term::Quote(f) => 1 + f.size(),
            _ => 1,
        };
        match self {
            Formula::Eq(a, b) => 1 + term(a) + term(b),
            Formula::Truth(t) | Formula::Det(t) | Formula::Typed(t) => 1 + term(t),
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Replaces free occurrences of `var` by `term` at the displayed level.
/// Quote payloads are codes and are never entered.
pub fn substitute(f: &Formula, var: &str, term: &Term) -> Formula {
    let sub_term = |t: &Term| match t {
        Term::Var(v) if v == var => term.clone(),
        other => other.clone(),
    };
    match f {
        Formula::Eq(a, b) => Formula::Eq(sub_term(a), sub_term(b)),
        Formula::Truth(t) => Formula::Truth(sub_term(t)),
        Formula::Det(t) => Formula::Det(sub_term(t)),
        Formula::Typed(t) => Formula::Typed(sub_term(t)),
        Formula::Not(g) => Formula::not(substitute(g, var, term)),
        Formula::And(a, b) => Formula::and(substitute(a, var, term), substitute(b, var, term)),
        Formula::Or(a, b) => Formula::or(substitute(a, var, term), substitute(b, var, term)),
        Formula::Imp(a, b) => Formula::imp(substitute(a, var, term), substitute(b, var, term)),
        Formula::Forall(v, _) | Formula::Exists(v, _) if v == var => f.clone(),
        Formula::Forall(v, g) => Formula::forall(v.clone(), substitute(g, var, term)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), substitute(g, var, term)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_eq_zero() -> Formula {
        Formula::eq(Term::base("0"), Term::base("0"))
    }

    #[test]
    fn substitute_replaces_free_occurrence() {
        let f = Formula::truth(Term::var("v"));
        let got = substitute(&f, "v", &Term::quote(zero_eq_zero()));
        assert_eq!(got, Formula::true_of(zero_eq_zero()));
    }

    #[test]
    fn substitute_leaves_bound_occurrence() {
        let f = Formula::forall("v", Formula::truth(Term::var("v")));
        assert_eq!(substitute(&f, "v", &Term::base("c")), f);
    }

    #[test]
    fn substitute_does_not_enter_quotes() {
        let inner = Formula::truth(Term::var("v"));
        let f = Formula::eq(Term::quote(inner.clone()), Term::var("v"));
        let got = substitute(&f, "v", &Term::base("c"));
        assert_eq!(got, Formula::eq(Term::quote(inner), Term::base("c")));
    }

    #[test]
    fn language_is_outer_level() {
        let d = Formula::det(Term::base("0"));
        assert_eq!(d.language(), Language::Det);
        assert_eq!(Formula::true_of(d).language(), Language::Truth);
        assert_eq!(Formula::Typed(Term::base("0")).language(), Language::Typed);
    }

    #[test]
    fn normalize_removes_derived_connectives() {
        let f = Formula::exists("v", Formula::or(zero_eq_zero(), Formula::truth(Term::var("v"))));
        let mut ok = true;
        fn check(f: &Formula, ok: &mut bool) {
            match f {
                Formula::Or(..) | Formula::Imp(..) | Formula::Exists(..) => *ok = false,
                Formula::Not(g) | Formula::Forall(_, g) => check(g, ok),
                Formula::And(a, b) => {
                    check(a, ok);
                    check(b, ok)
                }
                _ => {}
            }
        }
        check(&f.normalize(), &mut ok);
        assert!(ok);
    }
}
