//! Concrete-syntax printing. Output re-parses to the same tree inside the
//! system it came from, so failing instances can be fed back to `eval`.

use std::fmt;

use super::ast::{Formula, Term};

const QUANT: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;
const ATOM: u8 = 5;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Forall(..) | Formula::Exists(..) => QUANT,
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Not(_) => NOT,
        _ => ATOM,
    }
}

fn write_formula(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let paren = prec(f) < min;
    if paren {
        out.write_str("(")?;
    }
    match f {
        Formula::Eq(a, b) => write!(out, "{a} = {b}")?,
        Formula::Truth(t) => write!(out, "T({t})")?,
        Formula::Det(t) => write!(out, "D({t})")?,
        Formula::Typed(t) => write!(out, "TT({t})")?,
        Formula::Not(g) => {
            out.write_str("not ")?;
            write_formula(g, NOT, out)?;
        }
        Formula::And(a, b) => {
            write_formula(a, AND, out)?;
            out.write_str(" and ")?;
            write_formula(b, NOT, out)?;
        }
        Formula::Or(a, b) => {
            write_formula(a, OR, out)?;
            out.write_str(" or ")?;
            write_formula(b, AND, out)?;
        }
        Formula::Imp(a, b) => {
            write_formula(a, OR, out)?;
            out.write_str(" -> ")?;
            write_formula(b, IMP, out)?;
        }
        Formula::Forall(v, g) => {
            write!(out, "forall {v} . ")?;
            write_formula(g, QUANT, out)?;
        }
        Formula::Exists(v, g) => {
            write!(out, "exists {v} . ")?;
            write_formula(g, QUANT, out)?;
        }
    }
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, QUANT, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Base(id) | Term::Name(id) | Term::Alias(id) | Term::Var(id) => f.write_str(id),
            Term::Quote(g) => write!(f, "quote({g})"),
        }
    }
}
