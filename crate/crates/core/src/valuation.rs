//! Four-valued evaluation, the jump on name atoms, and fixed points.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::syntax::{Formula, Language, SentenceSystem, Term};

/// A truth value as the pair (φ ∈ X, ¬φ ∈ X).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum V4 {
    N,
    T,
    F,
    B,
}

impl V4 {
    /// Enumeration order.
    pub const ALL: [V4; 4] = [V4::N, V4::T, V4::F, V4::B];

    pub fn from_bits(t: bool, f: bool) -> V4 {
        match (t, f) {
            (false, false) => V4::N,
            (true, false) => V4::T,
            (false, true) => V4::F,
            (true, true) => V4::B,
        }
    }

    pub fn from_bool(b: bool) -> V4 {
        if b {
            V4::T
        } else {
            V4::F
        }
    }

    /// φ ∈ X
    pub fn t(self) -> bool {
        matches!(self, V4::T | V4::B)
    }

    /// ¬φ ∈ X
    pub fn f(self) -> bool {
        matches!(self, V4::F | V4::B)
    }

    pub fn neg(self) -> V4 {
        V4::from_bits(self.f(), self.t())
    }

    pub fn and(self, o: V4) -> V4 {
        V4::from_bits(self.t() && o.t(), self.f() || o.f())
    }

    pub fn or(self, o: V4) -> V4 {
        V4::from_bits(self.t() || o.t(), self.f() && o.f())
    }

    /// Swaps N and B, fixes T and F.
    pub fn dual(self) -> V4 {
        V4::from_bits(!self.f(), !self.t())
    }

    /// Knowledge order.
    pub fn leq_k(self, o: V4) -> bool {
        (!self.t() || o.t()) && (!self.f() || o.f())
    }
}

impl fmt::Display for V4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            V4::N => "N",
            V4::T => "T",
            V4::F => "F",
            V4::B => "B",
        })
    }
}

impl FromStr for V4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<V4> {
        match s {
            "N" => Ok(V4::N),
            "T" => Ok(V4::T),
            "F" => Ok(V4::F),
            "B" => Ok(V4::B),
            other => Err(Error::Validation(format!("`{other}` is not one of N, T, F, B"))),
        }
    }
}

impl Serialize for V4 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Values of the primary names, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct NameAssignment(IndexMap<String, V4>);

impl NameAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn uniform(names: &[&str], v: V4) -> Self {
        NameAssignment(names.iter().map(|n| (n.to_string(), v)).collect())
    }

    pub fn get(&self, name: &str) -> Option<V4> {
        self.0.get(name).copied()
    }

    pub fn set(&mut self, name: impl Into<String>, v: V4) {
        self.0.insert(name.into(), v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, V4)> {
        self.0.iter().map(|(n, v)| (n.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise knowledge order; both sides must cover the same names.
    pub fn leq_k(&self, other: &NameAssignment) -> bool {
        self.iter()
            .all(|(n, v)| other.get(n).is_some_and(|w| v.leq_k(w)))
    }

    pub fn dual(&self) -> NameAssignment {
        NameAssignment(self.0.iter().map(|(n, v)| (n.clone(), v.dual())).collect())
    }
}

impl FromIterator<(String, V4)> for NameAssignment {
    fn from_iter<I: IntoIterator<Item = (String, V4)>>(iter: I) -> Self {
        NameAssignment(iter.into_iter().collect())
    }
}

impl fmt::Display for NameAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (n, v)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}: {v}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub consistent: bool,
    pub complete: bool,
    pub symmetric: bool,
    pub mixed: bool,
}

impl ClassFlags {
    pub fn label(&self) -> &'static str {
        match (self.consistent, self.complete) {
            (true, true) => "consistent, complete",
            (true, false) => "consistent",
            (false, true) => "complete",
            (false, false) => "mixed",
        }
    }
}

pub fn classify(w: &NameAssignment) -> ClassFlags {
    let consistent = w.iter().all(|(_, v)| v != V4::B);
    let complete = w.iter().all(|(_, v)| v != V4::N);
    ClassFlags {
        consistent,
        complete,
        symmetric: consistent || complete,
        mixed: !consistent && !complete,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub assignment: NameAssignment,
    pub class: ClassFlags,
}

impl FixedPoint {
    /// Wraps an assignment without checking the jump equations.
    pub fn new_unchecked(assignment: NameAssignment) -> Self {
        let class = classify(&assignment);
        FixedPoint { assignment, class }
    }

    /// Swaps N and B at every name.
    pub fn dual(&self) -> FixedPoint {
        FixedPoint::new_unchecked(self.assignment.dual())
    }
}

/// The three readings of determinateness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Cons,
    Comp,
    Sym,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Cons, Variant::Comp, Variant::Sym];

    pub fn id(self) -> &'static str {
        match self {
            Variant::Cons => "cons",
            Variant::Comp => "comp",
            Variant::Sym => "sym",
        }
    }

    /// Whether a sentence with value `v` is determinate.
    pub fn determinate(self, v: V4) -> bool {
        match self {
            Variant::Cons => v != V4::N,
            Variant::Comp => v != V4::B,
            Variant::Sym => matches!(v, V4::T | V4::F),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "cons" => Ok(Variant::Cons),
            "comp" => Ok(Variant::Comp),
            "sym" => Ok(Variant::Sym),
            other => Err(Error::Validation(format!("unknown variant `{other}`"))),
        }
    }
}

type Env<'f> = Vec<(&'f str, &'f Term)>;

/// FDE evaluation of truth-language sentences under a name assignment.
#[derive(Clone, Copy)]
pub struct Valuation<'s> {
    pub sys: &'s SentenceSystem,
    pub w: &'s NameAssignment,
}

impl<'s> Valuation<'s> {
    pub fn new(sys: &'s SentenceSystem, w: &'s NameAssignment) -> Self {
        Valuation { sys, w }
    }

    pub fn value(&self, f: &Formula) -> Result<V4> {
        self.eval(f, &mut Vec::new())
    }

    /// Value of `T(t)` for a closed term.
    pub fn truth_of(&self, t: &Term) -> Result<V4> {
        match self.sys.resolve_alias(t)? {
            Term::Base(_) => Ok(V4::F),
            Term::Name(n) => self.name_value(n),
            Term::Quote(g) if g.language() == Language::Truth => self.value(g),
            Term::Quote(_) => Ok(V4::F),
            Term::Var(v) => Err(Error::UnresolvedReference(format!("free variable `{v}`"))),
            Term::Alias(_) => unreachable!("aliases are resolved"),
        }
    }

    pub fn name_value(&self, n: &str) -> Result<V4> {
        let def = self
            .sys
            .names
            .get(n)
            .ok_or_else(|| Error::UnresolvedReference(n.to_string()))?;
        if def.body.language() != Language::Truth {
            return Ok(V4::F);
        }
        match &def.negates {
            Some(of) => Ok(self.name_value(of)?.neg()),
            None => self
                .w
                .get(n)
                .ok_or_else(|| Error::PreconditionViolated(format!("no value assigned to `{n}`"))),
        }
    }

    fn close<'f>(&self, t: &'f Term, env: &[(&'f str, &'f Term)]) -> Result<&'f Term> {
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

    fn eval<'f>(&'f self, f: &'f Formula, env: &mut Env<'f>) -> Result<V4> {
        Ok(match f {
            Formula::Eq(a, b) => {
                let a = self.sys.denote(self.close(a, env)?)?;
                let b = self.sys.denote(self.close(b, env)?)?;
                V4::from_bool(a == b)
            }
            Formula::Truth(t) => self.truth_of(self.close(t, env)?)?,
            Formula::Det(_) | Formula::Typed(_) => {
                return Err(Error::Language(format!(
                    "`{f}` is not in the truth language"
                )))
            }
            Formula::Not(g) => self.eval(g, env)?.neg(),
            Formula::And(a, b) => self.eval(a, env)?.and(self.eval(b, env)?),
            Formula::Or(a, b) => self.eval(a, env)?.or(self.eval(b, env)?),
            Formula::Imp(a, b) => self.eval(a, env)?.neg().or(self.eval(b, env)?),
            Formula::Forall(v, g) => {
                let mut acc = V4::T;
                for t in &self.sys.term_pool {
                    env.push((v, t));
                    let r = self.eval(g, env);
                    env.pop();
                    acc = acc.and(r?);
                }
                acc
            }
            Formula::Exists(v, g) => {
                let mut acc = V4::F;
                for t in &self.sys.term_pool {
                    env.push((v, t));
                    let r = self.eval(g, env);
                    env.pop();
                    acc = acc.or(r?);
                }
                acc
            }
        })
    }
}

pub fn eval_fde(sys: &SentenceSystem, w: &NameAssignment, f: &Formula) -> Result<V4> {
    Valuation::new(sys, w).value(f)
}

/// One application of the jump to the primary names.
pub fn jump_step(sys: &SentenceSystem, w: &NameAssignment) -> Result<NameAssignment> {
    let val = Valuation::new(sys, w);
    sys.primary_names()
        .into_iter()
        .map(|n| Ok((n.to_string(), val.value(sys.body(n).expect("declared"))?)))
        .collect()
}

pub fn is_fixed_point(sys: &SentenceSystem, w: &NameAssignment) -> Result<bool> {
    Ok(&jump_step(sys, w)? == w)
}

/// Kleene iteration from all-N.
pub fn least_fixed_point(sys: &SentenceSystem) -> Result<FixedPoint> {
    least_extension(sys, &NameAssignment::new())
}

/// Least fixed point agreeing with `fixed` on the names it covers. The
/// other primary names iterate from N.
pub fn least_extension(sys: &SentenceSystem, fixed: &NameAssignment) -> Result<FixedPoint> {
    extension_from(sys, fixed, V4::N)
}

/// Greatest fixed point (in the knowledge order) agreeing with `fixed`. The
/// other primary names iterate from B.
pub fn greatest_extension(sys: &SentenceSystem, fixed: &NameAssignment) -> Result<FixedPoint> {
    extension_from(sys, fixed, V4::B)
}

/// Extends `fp` to the names of a larger system without leaving the class
/// the variant is about: least for cons, greatest for comp, and for sym
/// least when `fp` is consistent, greatest otherwise.
pub fn class_extension(sys: &SentenceSystem, fp: &FixedPoint, variant: Variant) -> Result<FixedPoint> {
    match variant {
        Variant::Cons => least_extension(sys, &fp.assignment),
        Variant::Comp => greatest_extension(sys, &fp.assignment),
        Variant::Sym if fp.class.consistent => least_extension(sys, &fp.assignment),
        Variant::Sym => greatest_extension(sys, &fp.assignment),
    }
}

fn extension_from(sys: &SentenceSystem, fixed: &NameAssignment, start: V4) -> Result<FixedPoint> {
    let names = sys.primary_names();
    let mut w: NameAssignment = names
        .iter()
        .map(|n| (n.to_string(), fixed.get(n).unwrap_or(start)))
        .collect();
    // Monotone on a finite lattice of height 2k: at most 2k + 1 rounds.
    for _ in 0..=2 * names.len() + 1 {
        let mut next = jump_step(sys, &w)?;
        for (n, v) in fixed.iter() {
            if next.get(n).is_some() {
                next.set(n, v);
            }
        }
        if next == w {
            return Ok(FixedPoint::new_unchecked(w));
        }
        w = next;
    }
    Err(Error::PreconditionViolated(
        "iteration did not stabilise; the fixed part is not closed under the jump".into(),
    ))
}

/// Every fixed point of the jump, in lexicographic order of (name order,
/// N < T < F < B).
pub fn enumerate_fixed_points(
    sys: &SentenceSystem,
    max_names: usize,
    exec: Exec,
) -> Result<Vec<FixedPoint>> {
    let names = sys.primary_names();
    let k = names.len();
    if k > max_names {
        return Err(Error::EnumerationBudgetExceeded {
            names: k,
            cap: max_names,
        });
    }
    let candidate = |mut i: usize| {
        let mut vals = vec![V4::N; k];
        for slot in vals.iter_mut().rev() {
            *slot = V4::ALL[i % 4];
            i /= 4;
        }
        names
            .iter()
            .zip(vals)
            .map(|(n, v)| (n.to_string(), v))
            .collect::<NameAssignment>()
    };
    let hits = exec.map_range(1usize << (2 * k), |i| {
        let w = candidate(i);
        match is_fixed_point(sys, &w) {
            Ok(true) => Some(Ok(w)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    hits.into_iter()
        .flatten()
        .map(|r| r.map(FixedPoint::new_unchecked))
        .collect()
}

/// `{φ : variant-determinate}` as a predicate on sentences.
pub fn determinate(
    sys: &SentenceSystem,
    w: &NameAssignment,
    variant: Variant,
    f: &Formula,
) -> Result<bool> {
    Ok(variant.determinate(eval_fde(sys, w, f)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(text: &str) -> SentenceSystem {
        SentenceSystem::parse(text).unwrap()
    }

    fn w(pairs: &[(&str, V4)]) -> NameAssignment {
        pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
    }

    const LIAR_TT: &str = "base 0 1; name L := not T(L); name U := T(U);";

    #[test]
    fn lattice_tables() {
        assert_eq!(V4::N.neg(), V4::N);
        assert_eq!(V4::B.neg(), V4::B);
        assert_eq!(V4::T.neg(), V4::F);
        assert_eq!(V4::N.and(V4::B), V4::F);
        assert_eq!(V4::N.or(V4::B), V4::T);
        assert_eq!(V4::N.dual(), V4::B);
        assert!(V4::N.leq_k(V4::T) && V4::F.leq_k(V4::B) && !V4::T.leq_k(V4::F));
    }

    #[test]
    fn liar_values() {
        let s = sys(LIAR_TT);
        let lam = s.parse_sentence("not T(L)").unwrap();
        let lfp = w(&[("L", V4::N), ("U", V4::N)]);
        assert_eq!(eval_fde(&s, &lfp, &lam).unwrap(), V4::N);
        let glut = w(&[("L", V4::B), ("U", V4::N)]);
        assert_eq!(eval_fde(&s, &glut, &lam).unwrap(), V4::B);
        let grounded = s.parse_sentence("T(quote(0 = 0))").unwrap();
        assert_eq!(eval_fde(&s, &lfp, &grounded).unwrap(), V4::T);
        let base = s.parse_sentence("T(0)").unwrap();
        assert_eq!(eval_fde(&s, &lfp, &base).unwrap(), V4::F);
    }

    #[test]
    fn det_atoms_are_rejected() {
        let s = sys(LIAR_TT);
        let d = s.parse_sentence("D(L)").unwrap();
        let lfp = least_fixed_point(&s).unwrap().assignment;
        assert!(matches!(eval_fde(&s, &lfp, &d), Err(Error::Language(_))));
    }

    #[test]
    fn jump_examples() {
        let s = sys(LIAR_TT);
        let step = jump_step(&s, &w(&[("L", V4::T), ("U", V4::T)])).unwrap();
        assert_eq!(step.get("L"), Some(V4::F));
        assert_eq!(step.get("U"), Some(V4::T));
    }

    #[test]
    fn grounded_name_is_forced() {
        let s = sys("base 0; name G := T(quote(0 = 0));");
        let fps = enumerate_fixed_points(&s, 8, Exec::Sequential).unwrap();
        assert_eq!(fps.len(), 1);
        assert_eq!(fps[0].assignment.get("G"), Some(V4::T));
        assert_eq!(least_fixed_point(&s).unwrap(), fps[0]);
    }

    #[test]
    fn liar_truth_teller_has_eight_points() {
        let s = sys(LIAR_TT);
        let fps = enumerate_fixed_points(&s, 8, Exec::default()).unwrap();
        assert_eq!(fps.len(), 8);
        let count = |p: fn(&ClassFlags) -> bool| fps.iter().filter(|f| p(&f.class)).count();
        assert_eq!(count(|c| c.consistent), 3);
        assert_eq!(count(|c| c.complete), 3);
        assert_eq!(count(|c| c.mixed), 2);
        let lfp = least_fixed_point(&s).unwrap();
        assert_eq!(lfp.assignment, w(&[("L", V4::N), ("U", V4::N)]));
        assert!(fps.iter().all(|f| lfp.assignment.leq_k(&f.assignment)));
    }

    #[test]
    fn enumeration_budget() {
        let s = sys(LIAR_TT);
        assert!(matches!(
            enumerate_fixed_points(&s, 1, Exec::Sequential),
            Err(Error::EnumerationBudgetExceeded { names: 2, cap: 1 })
        ));
    }

    #[test]
    fn derived_names_negate() {
        let s = sys("base 0; name L := not T(L); negname K of L := not not T(L);");
        assert_eq!(s.primary_names(), vec!["L"]);
        let glut = w(&[("L", V4::T)]);
        let k = s.parse_sentence("T(K)").unwrap();
        assert_eq!(eval_fde(&s, &glut, &k).unwrap(), V4::F);
    }

    #[test]
    fn classification_examples() {
        let c = classify(&w(&[("L", V4::N), ("U", V4::T)]));
        assert!(c.consistent && c.symmetric && !c.complete);
        let c = classify(&w(&[("L", V4::B), ("U", V4::B)]));
        assert!(c.complete && c.symmetric && !c.consistent);
        assert!(classify(&w(&[("L", V4::B), ("U", V4::N)])).mixed);
    }
}
