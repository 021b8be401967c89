//! Canonical text form of polynomials and relations.

use crate::algsys::Relation;
use crate::janet::{DiffRanking, Jet};
use crate::polyring::{Monomial, Poly, RankedVar, Ranking, Variable};
use num_traits::{One, Signed};

pub trait Names {
    type V: RankedVar;
    fn format_var(&self, v: &Self::V) -> String;
}

impl Names for Ranking {
    type V = Variable;

    fn format_var(&self, v: &Variable) -> String {
        self.name(*v).to_string()
    }
}

impl Names for DiffRanking {
    type V = Jet;

    fn format_var(&self, v: &Jet) -> String {
        self.format_jet(v)
    }
}

fn format_monomial<N: Names>(m: &Monomial<N::V>, names: &N) -> String {
    let factors: Vec<String> = m
        .iter()
        .map(|(v, e)| if *e == 1 { names.format_var(v) } else { format!("{}^{e}", names.format_var(v)) })
        .collect();
    factors.join("*")
}

/// Expanded form with terms from the largest monomial down, e.g.
/// `y^2 - x^3 - x^2`.
pub fn format_poly<N: Names>(p: &Poly<N::V>, names: &N) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms_desc().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        if k == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.abs();
        let body = match (m.is_one(), a.is_one()) {
            (true, _) => a.to_string(),
            (false, true) => format_monomial(m, names),
            (false, false) => format!("{a}*{}", format_monomial(m, names)),
        };
        out.push_str(&body);
    }
    out
}

/// The canonical associate of the relation's polynomial: coprime integer
/// coefficients, positive leading coefficient.
pub fn format_canonical<N: Names>(r: &Relation<N::V>, names: &N) -> String {
    format_poly(&r.poly.normalized(), names)
}
