//! Sentence systems: a finite base domain, a name table for self-reference,
//! aliases, and the instantiation pools every quantifier and schema ranges
//! over.

use std::collections::HashSet;
use std::fmt::Write as _;

use indexmap::{IndexMap, IndexSet};

use crate::error::{Error, Result};

use super::ast::{substitute, Formula, Language, Term};
use super::parse::{parse_raw_formula, parse_statements, Statement, RESERVED};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NameDef {
    pub body: Formula,
    /// Set for derived names whose value is the negation of another name's.
    /// They take no part in the jump.
    pub negates: Option<String>,
}

/// A formula with one distinguished free variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpenFormula {
    pub var: String,
    pub body: Formula,
}

impl OpenFormula {
    pub fn new(var: impl Into<String>, body: Formula) -> Self {
        OpenFormula {
            var: var.into(),
            body,
        }
    }

    pub fn apply(&self, t: &Term) -> Formula {
        substitute(&self.body, &self.var, t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Denotation<'a> {
    Base(&'a str),
    Sentence(&'a Formula),
}

impl<'a> Denotation<'a> {
    pub fn sentence(self) -> Option<&'a Formula> {
        match self {
            Denotation::Sentence(f) => Some(f),
            Denotation::Base(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoolConfig {
    pub max_pool: usize,
    /// How many level-0 sentences get a quotation term in the term pool.
    pub quote_quota: usize,
    /// How many level-0 sentences are paired into conjunctions at depth 1.
    pub conj_quota: usize,
}

impl Default for PoolConfig {
    fn default() -> Self {
        PoolConfig {
            max_pool: 2000,
            quote_quota: 16,
            conj_quota: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentenceSystem {
    pub base: Vec<String>,
    pub names: IndexMap<String, NameDef>,
    pub aliases: IndexMap<String, Term>,
    pub declared_sentences: Vec<Formula>,
    pub declared_terms: Vec<Term>,
    pub declared_formulas: Vec<OpenFormula>,
    pub depth: usize,
    pub term_pool: Vec<Term>,
    pub sentence_pool: IndexSet<Formula>,
    /// Number of leading `sentence_pool` entries generated at depth 0.
    pub level0_len: usize,
    pub formula_pool: Vec<OpenFormula>,
}

impl SentenceSystem {
    /// Parses, validates and closes the pools at the declared depth
    /// (default 0).
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, None, PoolConfig::default())
    }

    /// Like [`SentenceSystem::parse`] with an explicit depth that overrides
    /// any `depth` statement.
    pub fn parse_with(text: &str, depth: Option<usize>, config: PoolConfig) -> Result<Self> {
        let mut sys = Self::from_statements(parse_statements(text)?)?;
        if let Some(d) = depth {
            sys.depth = d;
        }
        sys.generate_pools(sys.depth, config)
    }

    fn from_statements(stmts: Vec<Statement>) -> Result<Self> {
        let mut sys = SentenceSystem {
            base: Vec::new(),
            names: IndexMap::new(),
            aliases: IndexMap::new(),
            declared_sentences: Vec::new(),
            declared_terms: Vec::new(),
            declared_formulas: Vec::new(),
            depth: 0,
            term_pool: Vec::new(),
            sentence_pool: IndexSet::new(),
            level0_len: 0,
            formula_pool: Vec::new(),
        };
        let mut ids = HashSet::new();
        let mut declare = |id: &str| -> Result<()> {
            if RESERVED.contains(&id) {
                return Err(Error::Validation(format!("`{id}` is a reserved word")));
            }
            if !ids.insert(id.to_string()) {
                return Err(Error::Validation(format!("`{id}` is declared twice")));
            }
            Ok(())
        };
        for s in &stmts {
            match s {
                Statement::Base(bs) => {
                    for b in bs {
                        declare(b)?;
                        sys.base.push(b.clone());
                    }
                }
                Statement::Name(id, body) => {
                    declare(id)?;
                    sys.names.insert(
                        id.clone(),
                        NameDef {
                            body: body.clone(),
                            negates: None,
                        },
                    );
                }
                Statement::NegName { name, of, body } => {
                    declare(name)?;
                    sys.names.insert(
                        name.clone(),
                        NameDef {
                            body: body.clone(),
                            negates: Some(of.clone()),
                        },
                    );
                }
                Statement::Alias(id, t) => {
                    declare(id)?;
                    sys.aliases.insert(id.clone(), t.clone());
                }
                Statement::PoolSentence(f) => sys.declared_sentences.push(f.clone()),
                Statement::PoolTerm(t) => sys.declared_terms.push(t.clone()),
                Statement::PoolFormula(v, f) => {
                    sys.declared_formulas.push(OpenFormula::new(v.clone(), f.clone()))
                }
                Statement::Depth(d) => sys.depth = *d,
            }
        }
        sys.resolve_declarations()?;
        Ok(sys)
    }

    fn resolve_declarations(&mut self) -> Result<()> {
        let mut names = self.names.clone();
        for (id, def) in names.iter_mut() {
            def.body = self.resolve_sentence(&def.body, &format!("body of {id}"))?;
            if let Some(of) = &def.negates {
                let mut seen = vec![id.as_str()];
                let mut cur = of.as_str();
                loop {
                    if seen.contains(&cur) {
                        return Err(Error::Validation(format!("negname cycle through `{id}`")));
                    }
                    seen.push(cur);
                    match self.names.get(cur) {
                        Some(NameDef { negates: Some(next), .. }) => cur = next,
                        Some(_) => break,
                        None => {
                            return Err(Error::Validation(format!(
                                "`{id}` negates `{cur}`, which is not a declared name"
                            )))
                        }
                    }
                }
            }
        }
        let mut aliases = self.aliases.clone();
        for t in aliases.values_mut() {
            *t = self.resolve_term(t, &mut Vec::new())?;
        }
        self.names = names;
        self.aliases = aliases;
        for a in self.aliases.keys() {
            self.alias_target(a)?;
        }
        self.declared_sentences = self
            .declared_sentences
            .iter()
            .map(|f| self.resolve_sentence(f, "pool sentence"))
            .collect::<Result<_>>()?;
        self.declared_terms = self
            .declared_terms
            .iter()
            .map(|t| {
                let t = self.resolve_term(t, &mut Vec::new())?;
                if let Term::Var(v) = &t {
                    return Err(Error::Validation(format!("pool term `{v}` is not closed")));
                }
                Ok(t)
            })
            .collect::<Result<_>>()?;
        self.declared_formulas = self
            .declared_formulas
            .iter()
            .map(|of| {
                self.check_binder(&of.var)?;
                let body = self.resolve_formula(&of.body, &mut vec![of.var.clone()])?;
                if body.free_vars().iter().any(|v| v != &of.var) {
                    return Err(Error::Validation(format!(
                        "pool formula `{}` has more than one free variable",
                        body
                    )));
                }
                Ok(OpenFormula::new(of.var.clone(), body))
            })
            .collect::<Result<_>>()?;
        Ok(())
    }

    fn is_declared(&self, id: &str) -> bool {
        self.names.contains_key(id) || self.aliases.contains_key(id) || self.base.iter().any(|b| b == id)
    }

    fn check_binder(&self, v: &str) -> Result<()> {
        if self.is_declared(v) {
            return Err(Error::Validation(format!(
                "bound variable `{v}` clashes with a declared identifier"
            )));
        }
        Ok(())
    }

    /// Resolves bare identifiers in a formula read on its own, against this
    /// system's declarations. The result must be a sentence.
    pub fn parse_sentence(&self, text: &str) -> Result<Formula> {
        let raw = parse_raw_formula(text)?;
        self.resolve_sentence(&raw, "sentence")
    }

    /// Parses `var . formula` or a formula with exactly one free variable.
    pub fn parse_open_formula(&self, var: &str, text: &str) -> Result<OpenFormula> {
        self.check_binder(var)?;
        let raw = parse_raw_formula(text)?;
        let body = self.resolve_formula(&raw, &mut vec![var.to_string()])?;
        Ok(OpenFormula::new(var, body))
    }

    fn resolve_sentence(&self, f: &Formula, what: &str) -> Result<Formula> {
        let g = self.resolve_formula(f, &mut Vec::new())?;
        if let Some(v) = g.free_vars().first() {
            return Err(Error::Validation(format!("{what} has free variable `{v}`")));
        }
        Ok(g)
    }

    fn resolve_formula(&self, f: &Formula, bound: &mut Vec<String>) -> Result<Formula> {
        Ok(match f {
            Formula::Eq(a, b) => Formula::Eq(self.resolve_term(a, bound)?, self.resolve_term(b, bound)?),
            Formula::Truth(t) => Formula::Truth(self.resolve_term(t, bound)?),
            Formula::Det(t) => Formula::Det(self.resolve_term(t, bound)?),
            Formula::Typed(t) => Formula::Typed(self.resolve_term(t, bound)?),
            Formula::Not(g) => Formula::not(self.resolve_formula(g, bound)?),
            Formula::And(a, b) => Formula::and(self.resolve_formula(a, bound)?, self.resolve_formula(b, bound)?),
            Formula::Or(a, b) => Formula::or(self.resolve_formula(a, bound)?, self.resolve_formula(b, bound)?),
            Formula::Imp(a, b) => Formula::imp(self.resolve_formula(a, bound)?, self.resolve_formula(b, bound)?),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                self.check_binder(v)?;
                bound.push(v.clone());
                let body = self.resolve_formula(g, bound);
                bound.pop();
                let body = body?;
                if matches!(f, Formula::Forall(..)) {
                    Formula::forall(v.clone(), body)
                } else {
                    Formula::exists(v.clone(), body)
                }
            }
        })
    }

    fn resolve_term(&self, t: &Term, bound: &mut Vec<String>) -> Result<Term> {
        let unresolved = |id: &str| Error::UnresolvedReference(id.to_string());
        Ok(match t {
            Term::Var(id) => {
                if bound.contains(id) {
                    Term::Var(id.clone())
                } else if self.names.contains_key(id) {
                    Term::Name(id.clone())
                } else if self.aliases.contains_key(id) {
                    Term::Alias(id.clone())
                } else if self.base.contains(id) {
                    Term::Base(id.clone())
                } else {
                    return Err(unresolved(id));
                }
            }
            Term::Name(id) if self.names.contains_key(id) => t.clone(),
            Term::Alias(id) if self.aliases.contains_key(id) => t.clone(),
            Term::Base(id) if self.base.contains(id) => t.clone(),
            Term::Name(id) | Term::Alias(id) | Term::Base(id) => return Err(unresolved(id)),
            Term::Quote(f) => Term::quote(self.resolve_sentence(f, "quoted formula")?),
        })
    }

    /// Follows an alias chain to a non-alias term.
    pub fn alias_target(&self, alias: &str) -> Result<&Term> {
        let mut seen = Vec::new();
        let mut cur = alias;
        loop {
            if seen.contains(&cur) {
                return Err(Error::Validation(format!("alias cycle through `{alias}`")));
            }
            seen.push(cur);
            match self.aliases.get(cur) {
                Some(Term::Alias(next)) => cur = next,
                Some(t) => return Ok(t),
                None => return Err(Error::UnresolvedReference(cur.to_string())),
            }
        }
    }

    /// Strips aliases off a term.
    pub fn resolve_alias<'a>(&'a self, t: &'a Term) -> Result<&'a Term> {
        match t {
            Term::Alias(a) => self.alias_target(a),
            other => Ok(other),
        }
    }

    pub fn denote<'a>(&'a self, t: &'a Term) -> Result<Denotation<'a>> {
        match self.resolve_alias(t)? {
            Term::Base(b) => Ok(Denotation::Base(b)),
            Term::Name(n) => self
                .names
                .get(n)
                .map(|d| Denotation::Sentence(&d.body))
                .ok_or_else(|| Error::UnresolvedReference(n.clone())),
            Term::Quote(f) => Ok(Denotation::Sentence(f)),
            Term::Var(v) => Err(Error::UnresolvedReference(format!("free variable `{v}`"))),
            Term::Alias(_) => unreachable!("alias chains end in a non-alias"),
        }
    }

    pub fn body(&self, name: &str) -> Option<&Formula> {
        self.names.get(name).map(|d| &d.body)
    }

    /// Names that take part in the jump: not derived, with a truth-language
    /// body.
    pub fn primary_names(&self) -> Vec<&str> {
        self.names
            .iter()
            .filter(|(_, d)| d.negates.is_none() && d.body.language() == Language::Truth)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    /// Whether `D` occurs anywhere in the system, quotes included.
    pub fn uses_det(&self) -> bool {
        self.names.values().any(|d| deep_has_det(&d.body))
            || self.declared_sentences.iter().any(deep_has_det)
            || self.declared_formulas.iter().any(|f| deep_has_det(&f.body))
            || self.declared_terms.iter().any(|t| matches!(t, Term::Quote(f) if deep_has_det(f)))
    }

    pub fn falsum(&self) -> Option<Formula> {
        match self.base.as_slice() {
            [a, b, ..] => Some(Formula::eq(Term::base(a.clone()), Term::base(b.clone()))),
            _ => None,
        }
    }

    pub fn verum(&self) -> Formula {
        let b = self.base.first().cloned().unwrap_or_default();
        Formula::eq(Term::base(b.clone()), Term::base(b))
    }

    /// Level-0 sentences, the range of binary schema metavariables.
    pub fn level0(&self) -> impl Iterator<Item = &Formula> {
        self.sentence_pool.iter().take(self.level0_len)
    }

    fn seeds(&self) -> Vec<Formula> {
        let mut out = self.declared_sentences.clone();
        for (n, d) in &self.names {
            out.push(d.body.clone());
            out.push(Formula::truth(Term::name(n.clone())));
        }
        if let Some(b0) = self.base.first() {
            out.push(Formula::eq(Term::base(b0.clone()), Term::base(b0.clone())));
        }
        if let Some(f) = self.falsum() {
            out.push(f);
        }
        out
    }

    fn initial_terms(&self) -> Vec<Term> {
        let mut out: IndexSet<Term> = IndexSet::new();
        out.extend(self.base.iter().map(|b| Term::base(b.clone())));
        out.extend(self.aliases.keys().map(|a| Term::Alias(a.clone())));
        out.extend(self.names.keys().map(|n| Term::name(n.clone())));
        out.extend(self.declared_terms.iter().cloned());
        out.into_iter().collect()
    }

    /// Returns the system with pools generated from the declared seeds. The
    /// result depends only on the declarations, `depth` and `config`.
    pub fn generate_pools(&self, depth: usize, config: PoolConfig) -> Result<Self> {
        if self.base.is_empty() {
            return Err(Error::Validation("a system needs at least one base element".into()));
        }
        let seeds = self.seeds();
        let mut terms = self.initial_terms();
        let level0 = dependency_closure(&seeds, &terms, self, config.max_pool)?;
        let mut term_set: IndexSet<Term> = terms.drain(..).collect();
        // Negations too, so that falsity of a quoted sentence has a code.
        for f in level0.iter().take(config.quote_quota) {
            term_set.insert(Term::quote(f.clone()));
            term_set.insert(Term::quote(Formula::not(f.clone())));
        }
        let terms: Vec<Term> = term_set.into_iter().collect();
        let mut pool = dependency_closure(&seeds, &terms, self, config.max_pool)?;
        let level0_len = pool.len();
        let uses_det = self.uses_det();
        let mut frontier: Vec<Formula> = pool.iter().cloned().collect();
        for level in 1..=depth {
            let mut next = Vec::new();
            for a in &frontier {
                next.push(Formula::not(a.clone()));
                next.push(Formula::true_of(a.clone()));
                if uses_det {
                    next.push(Formula::det(Term::quote(a.clone())));
                }
            }
            if level == 1 {
                let base: Vec<&Formula> = pool.iter().take(level0_len.min(config.conj_quota)).collect();
                for i in 0..base.len() {
                    for j in i + 1..base.len() {
                        next.push(Formula::and(base[i].clone(), base[j].clone()));
                    }
                }
            }
            let before = pool.len();
            extend_closure(&mut pool, next, &terms, self, config.max_pool)?;
            frontier = pool.iter().skip(before).cloned().collect();
        }
        let mut formula_pool = self.declared_formulas.clone();
        if formula_pool.is_empty() {
            let v = self.fresh_var("v");
            let b0 = Term::base(self.base[0].clone());
            formula_pool.push(OpenFormula::new(v.clone(), Formula::eq(Term::var(v.clone()), b0)));
            formula_pool.push(OpenFormula::new(v.clone(), Formula::truth(Term::var(v))));
        }
        Ok(SentenceSystem {
            depth,
            term_pool: terms,
            sentence_pool: pool,
            level0_len,
            formula_pool,
            ..self.clone()
        })
    }

    /// A variable name that is not a declared identifier.
    pub fn fresh_var(&self, stem: &str) -> String {
        if !self.is_declared(stem) && !RESERVED.contains(&stem) {
            return stem.to_string();
        }
        (0..)
            .map(|i| format!("{stem}{i}"))
            .find(|c| !self.is_declared(c))
            .expect("unbounded search")
    }

    /// Adds names (used for translation companions). Pools are kept as they
    /// are so quantifiers range over the same terms before and after.
    pub fn with_names(&self, extra: impl IntoIterator<Item = (String, NameDef)>) -> Self {
        let mut out = self.clone();
        for (n, d) in extra {
            out.names.insert(n, d);
        }
        out
    }

    /// Concrete syntax that parses back to an equal system.
    pub fn print(&self) -> String {
        let mut out = String::new();
        if !self.base.is_empty() {
            let _ = writeln!(out, "base {};", self.base.join(" "));
        }
        for (n, d) in &self.names {
            match &d.negates {
                None => {
                    let _ = writeln!(out, "name {n} := {};", d.body);
                }
                Some(of) => {
                    let _ = writeln!(out, "negname {n} of {of} := {};", d.body);
                }
            }
        }
        for (a, t) in &self.aliases {
            let _ = writeln!(out, "term {a} := {t};");
        }
        for f in &self.declared_sentences {
            let _ = writeln!(out, "pool sentence {f};");
        }
        for t in &self.declared_terms {
            let _ = writeln!(out, "pool term {t};");
        }
        for f in &self.declared_formulas {
            let _ = writeln!(out, "pool formula {} . {};", f.var, f.body);
        }
        if self.depth > 0 {
            let _ = writeln!(out, "depth {};", self.depth);
        }
        out
    }
}

/// Language of a formula counting atoms inside quotes as well.
pub fn deep_language(f: &Formula) -> Language {
    let mut det = false;
    let mut typed = false;
    deep_atoms(f, &mut |a| match a {
        Formula::Det(_) => det = true,
        Formula::Typed(_) => typed = true,
        _ => {}
    });
    match (det, typed) {
        (false, false) => Language::Truth,
        (true, false) => Language::Det,
        _ => Language::Typed,
    }
}

pub fn deep_has_det(f: &Formula) -> bool {
    let mut det = false;
    deep_atoms(f, &mut |a| det |= matches!(a, Formula::Det(_)));
    det
}

/// Visits atoms at every level, descending into quote payloads.
pub fn deep_atoms(f: &Formula, visit: &mut impl FnMut(&Formula)) {
    f.visit_atoms(&mut |a| {
        visit(a);
        let terms: Vec<&Term> = match a {
            Formula::Eq(x, y) => vec![x, y],
            Formula::Truth(t) | Formula::Det(t) | Formula::Typed(t) => vec![t],
            _ => vec![],
        };
        for t in terms {
            if let Term::Quote(g) = t {
                deep_atoms(g, visit);
            }
        }
    });
}

/// Smallest superset of `seeds` closed under immediate subsentences,
/// quantifier instances over `terms`, quote payloads and name bodies
/// (aliases are followed).
pub fn dependency_closure(
    seeds: &[Formula],
    terms: &[Term],
    sys: &SentenceSystem,
    cap: usize,
) -> Result<IndexSet<Formula>> {
    let mut pool = IndexSet::new();
    extend_closure(&mut pool, seeds.iter().cloned(), terms, sys, cap)?;
    Ok(pool)
}

fn extend_closure(
    pool: &mut IndexSet<Formula>,
    items: impl IntoIterator<Item = Formula>,
    terms: &[Term],
    sys: &SentenceSystem,
    cap: usize,
) -> Result<()> {
    let mut queue = pool.len();
    for f in items {
        pool.insert(f);
    }
    while queue < pool.len() {
        if pool.len() > cap {
            return Err(Error::PoolBudgetExceeded {
                what: "sentence pool",
                cap,
            });
        }
        let f = pool.get_index(queue).cloned().expect("index in range");
        queue += 1;
        let mut add = |g: Formula| {
            pool.insert(g);
        };
        let add_term = |t: &Term, add: &mut dyn FnMut(Formula)| {
            if let Ok(Denotation::Sentence(g)) = sys.denote(t) {
                add(g.clone());
            }
        };
        match &f {
            Formula::Eq(a, b) => {
                add_term(a, &mut add);
                add_term(b, &mut add);
            }
            Formula::Truth(t) | Formula::Det(t) | Formula::Typed(t) => add_term(t, &mut add),
            Formula::Not(g) => add((**g).clone()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                add((**a).clone());
                add((**b).clone());
            }
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                for t in terms {
                    add(substitute(g, v, t));
                }
            }
        }
    }
    if pool.len() > cap {
        return Err(Error::PoolBudgetExceeded {
            what: "sentence pool",
            cap,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIAR: &str = "base 0 1;\nname L := not T(L);\n";

    #[test]
    fn liar_body_resolves_to_name() {
        let sys = SentenceSystem::parse(LIAR).unwrap();
        assert_eq!(
            sys.body("L").unwrap(),
            &Formula::not(Formula::truth(Term::name("L")))
        );
    }

    #[test]
    fn unresolved_name_is_reported() {
        let err = SentenceSystem::parse("base 0; name X := T(Y);").unwrap_err();
        assert!(matches!(err, Error::UnresolvedReference(ref y) if y == "Y"), "{err:?}");
    }

    #[test]
    fn alias_cycle_is_rejected() {
        let err = SentenceSystem::parse("base 0; term a := b; term b := a;").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err:?}");
    }

    #[test]
    fn duplicate_and_reserved_ids_are_rejected() {
        assert!(SentenceSystem::parse("base 0 0;").is_err());
        assert!(SentenceSystem::parse("base 0; name of := 0 = 0;").is_err());
    }

    #[test]
    fn denotation_follows_aliases_and_names() {
        let sys = SentenceSystem::parse("base 0 1; name L := not T(L); term a := L;").unwrap();
        let body = sys.body("L").unwrap();
        assert_eq!(sys.denote(&Term::Alias("a".into())).unwrap(), Denotation::Sentence(body));
        assert_eq!(sys.denote(&Term::base("1")).unwrap(), Denotation::Base("1"));
        let q = Term::quote(body.clone());
        assert_eq!(sys.denote(&Term::name("L")).unwrap(), sys.denote(&q).unwrap());
    }

    #[test]
    fn depth_zero_liar_pool_is_hand_closure() {
        let sys = SentenceSystem::parse(LIAR).unwrap();
        let l = Formula::truth(Term::name("L"));
        let zero = |a: &str, b: &str| Formula::eq(Term::base(a), Term::base(b));
        let expected: IndexSet<Formula> =
            [Formula::not(l.clone()), l, zero("0", "0"), zero("0", "1")].into_iter().collect();
        assert_eq!(sys.sentence_pool, expected);
    }

    #[test]
    fn depth_one_adds_negations_quotes_and_conjunctions() {
        let sys = SentenceSystem::parse_with(LIAR, Some(1), PoolConfig::default()).unwrap();
        let lam = Formula::not(Formula::truth(Term::name("L")));
        assert!(sys.sentence_pool.contains(&Formula::true_of(lam.clone())));
        assert!(sys.sentence_pool.contains(&Formula::not(lam.clone())));
        let t = Formula::truth(Term::name("L"));
        assert!(sys.sentence_pool.contains(&Formula::and(lam, t)));
    }

    #[test]
    fn pool_cap_is_enforced() {
        let text = "base 0 1; name A := T(A); name B := not T(B); name C := T(A) and T(B);";
        let config = PoolConfig {
            max_pool: 10,
            ..PoolConfig::default()
        };
        let err = SentenceSystem::parse_with(text, Some(1), config).unwrap_err();
        assert!(matches!(err, Error::PoolBudgetExceeded { cap: 10, .. }), "{err:?}");
    }

    #[test]
    fn print_round_trips() {
        let text = "base 0 1;\nname L := not T(L);\nnegname L' of L := not not T(L);\n\
                    term a := quote(forall v . T(v) or v = 0);\npool sentence exists x . T(x);\n\
                    pool term a;\npool formula w . not T(w) -> w = a;\ndepth 1;\n";
        let sys = SentenceSystem::parse(text).unwrap();
        let again = SentenceSystem::parse(&sys.print()).unwrap();
        assert_eq!(sys, again);
    }

    #[test]
    fn generation_is_idempotent() {
        let sys = SentenceSystem::parse_with(LIAR, Some(1), PoolConfig::default()).unwrap();
        let again = sys.generate_pools(1, PoolConfig::default()).unwrap();
        assert_eq!(sys, again);
    }
}
