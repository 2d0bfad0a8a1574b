//! Staged construction of a model with primitive `D`.
//!
//! Stages start from `(∅, ∅)`. `D_{k+1}` applies the right-to-left
//! determinateness clauses to `D_k` (reading falsity off `T_k`), and
//! `T_{k+1}` collects the sentences satisfied by `(D_k, T_k)`. Membership of
//! a sentence at a stage is computed on demand and cached, so models can be
//! queried beyond the pool.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::syntax::{substitute, Denotation, Formula, Language, SentenceSystem, Term};

use super::{satisfies, Atoms, ClassicalModel};

/// Extra stages past stabilization used when querying the model, so that
/// sentences nested deeper than the pool have settled too.
const MARGIN: usize = 8;

pub(crate) struct Stages {
    sys: SentenceSystem,
    det: RwLock<HashMap<(usize, Formula), bool>>,
    truth: RwLock<HashMap<(usize, Formula), bool>>,
}

fn cached(
    memo: &RwLock<HashMap<(usize, Formula), bool>>,
    key: (usize, Formula),
    compute: impl FnOnce(&Formula) -> Result<bool>,
) -> Result<bool> {
    if let Some(v) = memo.read().expect("memo lock").get(&key) {
        return Ok(*v);
    }
    let v = compute(&key.1)?;
    memo.write().expect("memo lock").insert(key, v);
    Ok(v)
}

impl Stages {
    fn new(sys: &SentenceSystem) -> Self {
        Stages {
            sys: sys.clone(),
            det: RwLock::new(HashMap::new()),
            truth: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn system(&self) -> &SentenceSystem {
        &self.sys
    }

    fn sentence<'a>(&'a self, t: &'a Term) -> Result<Option<&'a Formula>> {
        Ok(match self.sys.denote(t)? {
            Denotation::Sentence(f) if matches!(f.language(), Language::Truth | Language::Det) => Some(f),
            _ => None,
        })
    }

    /// `f ∈ D_k`.
    pub(crate) fn in_d(&self, k: usize, f: &Formula) -> Result<bool> {
        if k == 0 {
            return Ok(false);
        }
        cached(&self.det, (k, f.normalize()), |f| self.gamma(k - 1, f))
    }

    /// `f ∈ T_k`.
    pub(crate) fn in_t(&self, k: usize, f: &Formula) -> Result<bool> {
        if k == 0 {
            return Ok(false);
        }
        cached(&self.truth, (k, f.normalize()), |f| {
            satisfies(&FhAtoms { stages: self, stage: k - 1 }, f)
        })
    }

    /// One application of the positive clauses with `X = D_j`, `Y = T_j`.
    fn gamma(&self, j: usize, f: &Formula) -> Result<bool> {
        let x = |g: &Formula| self.in_d(j, g);
        let y_false = |g: &Formula| self.in_t(j, &Formula::not(g.clone()));
        Ok(match f {
            Formula::Eq(..) => true,
            Formula::Truth(t) | Formula::Det(t) => match self.sentence(t)? {
                Some(g) => x(g)?,
                None => false,
            },
            Formula::Typed(_) => false,
            Formula::Not(g) => x(g)?,
            Formula::And(a, b) => {
                let (da, db) = (x(a)?, x(b)?);
                (da && db) || (da && y_false(a)?) || (db && y_false(b)?)
            }
            Formula::Forall(v, g) => {
                let mut all = true;
                let mut witness = false;
                for t in &self.sys.term_pool {
                    let inst = substitute(g, v, t);
                    let d = x(&inst)?;
                    all &= d;
                    if d && y_false(&inst)? {
                        witness = true;
                        break;
                    }
                }
                all || witness
            }
            Formula::Or(..) | Formula::Imp(..) | Formula::Exists(..) => {
                unreachable!("membership is computed on normalized sentences")
            }
        })
    }
}

pub(crate) struct FhAtoms<'a> {
    pub(crate) stages: &'a Stages,
    pub(crate) stage: usize,
}

impl Atoms for FhAtoms<'_> {
    fn sys(&self) -> &SentenceSystem {
        &self.stages.sys
    }

    fn truth(&self, t: &Term) -> Result<bool> {
        match self.stages.sentence(t)? {
            Some(f) => self.stages.in_t(self.stage, f),
            None => Ok(false),
        }
    }

    fn det(&self, t: &Term) -> Result<bool> {
        match self.stages.sentence(t)? {
            Some(f) => self.stages.in_d(self.stage, f),
            None => Ok(false),
        }
    }
}

/// Sizes of `D_k` and `T_k` restricted to the sentence pool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StagePair {
    pub stage: usize,
    pub determinate: usize,
    pub true_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FhTrace {
    pub stages: Vec<StagePair>,
    /// Set when the pool pairs repeat with a period greater than one.
    pub period: Option<usize>,
}

pub enum FhOutcome {
    /// Pool pairs at `stage` and `stage + 1` agree. `model` interprets `D`
    /// by a later stage `D_s` and `T` by satisfaction in `(D_s, T_s)`.
    Stabilized {
        stage: usize,
        determinate: Vec<Formula>,
        truths: Vec<Formula>,
        model: ClassicalModel,
        trace: FhTrace,
    },
    NonStabilized {
        trace: FhTrace,
    },
}

/// Runs the stages over the sentence pool until two consecutive pool pairs
/// agree, a longer cycle shows up, or `max_stages` is reached.
pub fn fh_construct(sys: &SentenceSystem, max_stages: usize) -> Result<FhOutcome> {
    if max_stages == 0 {
        return Err(Error::PreconditionViolated("max_stages must be at least 1".into()));
    }
    let stages = Arc::new(Stages::new(sys));
    let pool: Vec<&Formula> = sys
        .sentence_pool
        .iter()
        .filter(|f| matches!(f.language(), Language::Truth | Language::Det))
        .collect();
    let pair = |k: usize| -> Result<(Vec<bool>, Vec<bool>)> {
        let d = pool.iter().map(|f| stages.in_d(k, f)).collect::<Result<Vec<_>>>()?;
        let t = pool.iter().map(|f| stages.in_t(k, f)).collect::<Result<Vec<_>>>()?;
        Ok((d, t))
    };
    let count = |v: &[bool]| v.iter().filter(|b| **b).count();
    let mut seen = vec![pair(0)?];
    let mut trace = FhTrace {
        stages: vec![StagePair {
            stage: 0,
            determinate: 0,
            true_count: 0,
        }],
        period: None,
    };
    for k in 1..=max_stages {
        let next = pair(k)?;
        trace.stages.push(StagePair {
            stage: k,
            determinate: count(&next.0),
            true_count: count(&next.1),
        });
        if next == seen[k - 1] {
            let (d, t) = &seen[k - 1];
            let pick = |bits: &[bool]| {
                pool.iter()
                    .zip(bits)
                    .filter(|(_, b)| **b)
                    .map(|(f, _)| (*f).clone())
                    .collect()
            };
            return Ok(FhOutcome::Stabilized {
                stage: k - 1,
                determinate: pick(d),
                truths: pick(t),
                model: ClassicalModel::fh(Arc::clone(&stages), k - 1 + MARGIN),
                trace,
            });
        }
        if let Some(j) = seen.iter().position(|p| *p == next) {
            trace.period = Some(k - j);
            return Ok(FhOutcome::NonStabilized { trace });
        }
        seen.push(next);
    }
    Ok(FhOutcome::NonStabilized { trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grounded_stabilizes_with_everything_determinate() {
        let s = SentenceSystem::parse(
            "base 0 1; name G := T(quote(0 = 0)); name H := not T(quote(0 = 1));",
        )
        .unwrap();
        match fh_construct(&s, 64).unwrap() {
            FhOutcome::Stabilized { determinate, model, .. } => {
                assert_eq!(determinate.len(), s.sentence_pool.len());
                assert!(model.eval(&s.parse_sentence("D(G) and T(G)").unwrap()).unwrap());
            }
            FhOutcome::NonStabilized { trace } => panic!("no stabilization: {trace:?}"),
        }
    }

    #[test]
    fn liar_never_enters_d() {
        let s = SentenceSystem::parse("base 0 1; name L := not T(L);").unwrap();
        let lambda = s.body("L").unwrap().clone();
        match fh_construct(&s, 64).unwrap() {
            FhOutcome::Stabilized { determinate, .. } => assert!(!determinate.contains(&lambda)),
            FhOutcome::NonStabilized { trace } => {
                assert!(trace.period.is_some() || trace.stages.len() == 65)
            }
        }
    }

    #[test]
    fn zero_stages_rejected() {
        let s = SentenceSystem::parse("base 0;").unwrap();
        assert!(fh_construct(&s, 0).is_err());
    }
}
