//! Delta invariants of curves, the genus of the representable semigroup and
//! its symmetry, all computed from the graph.
//!
//! A curve `C` is given by arrows: each arrow on `v` is a smooth transversal
//! branch through `E_v`, so the total transform pulls back to
//! `l'_C = Σ E*_v`. Throughout, `h' = [Z_K] + h` is the class shifted by the
//! canonical class and `s_{h'}` its minimal anti-nef cycle.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use crate::cycle::QCycle;
use crate::graph::{ClassElt, Graph, GraphError};
use crate::group::ClassKey;
use crate::laufer::{chi_drop, is_rational, minimal_class_cycle};
use crate::pgseries::{pg_table, PgTable};
use crate::rational::{format_rational, int, to_i64, Rational};
use crate::seifert::{conductor_formula, semigroup, Star};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("curve has no arrows")]
    NoArrows,
    #[error("curve cycle must be anti-nef and nonzero")]
    NotAntinef,
    #[error("no p_g data: graph is neither star-shaped nor rational, and none was supplied")]
    MissingPgData,
    #[error("graph is not rational")]
    NotRational,
    #[error("vertex {0} carries more than one arrow")]
    MultipleArrowsOnVertex(usize),
    #[error("cycle {0:?} should be integral")]
    NonIntegralChiArgument(Vec<String>),
    #[error("supplied p_g data lacks class {0:?}")]
    MissingClass(Vec<i64>),
    #[error("result {0} is not a nonnegative integer")]
    NotANaturalNumber(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A curve germ through the singular point, by its total transform.
#[derive(Debug, Clone)]
pub struct CurveData {
    arrows: Vec<usize>,
    cycle: QCycle,
    class: ClassElt,
}

impl CurveData {
    /// Smooth transversal branches through the listed vertices.
    pub fn from_arrows(g: &Graph, arrows: &[usize]) -> Result<Self, InvariantError> {
        if arrows.is_empty() {
            return Err(InvariantError::NoArrows);
        }
        let mut cycle = QCycle::zero(g.num_vertices());
        for &v in arrows {
            if v >= g.num_vertices() {
                return Err(GraphError::BadArrow(v).into());
            }
            cycle = &cycle + g.dual(v);
        }
        let class = g.class_of(&cycle)?;
        Ok(CurveData {
            arrows: arrows.to_vec(),
            cycle,
            class,
        })
    }

    /// An explicitly given `l'_C`; it is trusted to come from a curve.
    pub fn from_cycle(g: &Graph, cycle: QCycle) -> Result<Self, InvariantError> {
        if cycle.is_zero() || !g.is_antinef(&cycle) {
            return Err(InvariantError::NotAntinef);
        }
        let class = g.class_of(&cycle)?;
        let arrows = g
            .dual_coords(&cycle)?
            .iter()
            .enumerate()
            .flat_map(|(v, &y)| std::iter::repeat(v).take(y as usize))
            .collect();
        Ok(CurveData {
            arrows,
            cycle,
            class,
        })
    }

    /// The curve given by the arrows recorded on the graph.
    pub fn from_graph(g: &Graph) -> Result<Self, InvariantError> {
        Self::from_arrows(g, g.arrows())
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// `l'_C`.
    pub fn cycle(&self) -> &QCycle {
        &self.cycle
    }

    /// `h_C = [l'_C]`.
    pub fn class(&self) -> &ClassElt {
        &self.class
    }
}

/// Which source provided the equivariant geometric genera.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaPath {
    Rational,
    StarShapedQGorenstein,
    UserSuppliedPg,
}

/// Equivariant geometric genera `p_g_h` for the classes a formula needs.
#[derive(Debug, Clone)]
pub enum PgData {
    Star(PgTable),
    /// `p_g_h = χ(r_h) - χ(s_h)`, valid for rational graphs.
    Rational,
    Supplied(BTreeMap<ClassKey, i64>),
}

impl PgData {
    /// Star-shaped graphs use the graded table, rational ones the Laufer identity.
    pub fn for_graph(g: &Graph) -> Result<PgData, InvariantError> {
        if let Ok(star) = Star::from_graph(g) {
            return Ok(PgData::Star(pg_table(&star)));
        }
        if is_rational(g) {
            return Ok(PgData::Rational);
        }
        Err(InvariantError::MissingPgData)
    }

    pub fn path(&self) -> DeltaPath {
        match self {
            PgData::Star(_) => DeltaPath::StarShapedQGorenstein,
            PgData::Rational => DeltaPath::Rational,
            PgData::Supplied(_) => DeltaPath::UserSuppliedPg,
        }
    }

    pub fn pg_of(&self, g: &Graph, h: &ClassElt) -> Result<Rational, InvariantError> {
        match self {
            PgData::Star(t) => Ok(int(t.get(h))),
            PgData::Rational => Ok(chi_drop(g, h)),
            PgData::Supplied(m) => m
                .get(h.key())
                .map(|&v| int(v))
                .ok_or_else(|| InvariantError::MissingClass(h.key().0.clone())),
        }
    }

    pub fn pg(&self, g: &Graph) -> Result<Rational, InvariantError> {
        self.pg_of(g, &g.class_zero())
    }
}

/// A delta invariant with the terms it was assembled from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub delta: i64,
    pub path: DeltaPath,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub name: &'static str,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// `+1` or `-1`: how the term enters the sum.
    pub sign: i64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl DeltaReport {
    pub fn term(&self, name: &str) -> Option<&Rational> {
        self.terms.iter().find(|t| t.name == name).map(|t| &t.value)
    }
}

fn term(name: &'static str, value: Rational, sign: i64) -> Term {
    Term { name, value, sign }
}

/// Adds the signed terms and checks the sum is a natural number.
fn assemble(path: DeltaPath, terms: Vec<Term>) -> Result<DeltaReport, InvariantError> {
    let total = terms.iter().fold(int(0), |acc, t| acc + &t.value * int(t.sign));
    let delta = natural(&total)?;
    Ok(DeltaReport { delta, path, terms })
}

fn natural(x: &Rational) -> Result<i64, InvariantError> {
    match to_i64(x) {
        Some(v) if v >= 0 => Ok(v),
        _ => Err(InvariantError::NotANaturalNumber(format_rational(x))),
    }
}

/// `δ = χ(-l'_C) - χ(r_{-h_C}) + p_g_{-h_C} - p_g`.
pub fn delta_general(g: &Graph, curve: &CurveData, pg: &PgData) -> Result<DeltaReport, InvariantError> {
    let minus = g.class_neg(curve.class());
    let terms = vec![
        term("chi(-l'_C)", g.chi(&-curve.cycle()), 1),
        term("chi(r)", g.chi(minus.rep()), -1),
        term("pg_h", pg.pg_of(g, &minus)?, 1),
        term("pg", pg.pg(g)?, -1),
    ];
    assemble(pg.path(), terms)
}

/// `h' = [Z_K] + h_C`, `s_{h'}` and the integral cycle `Z_K + l'_C - s_{h'}`.
fn shifted(g: &Graph, curve: &CurveData) -> Result<(ClassElt, QCycle, QCycle), InvariantError> {
    let h = g.class_add(&g.canonical_class(), curve.class());
    let s = minimal_class_cycle(g, &h);
    let arg = &(g.canonical_cycle() + curve.cycle()) - &s;
    if !arg.is_integral() {
        return Err(InvariantError::NonIntegralChiArgument(arg.to_strings()));
    }
    Ok((h, s, arg))
}

/// `δ = χ_{h'}(Z_K + l'_C - s_{h'}) + χ(s_{h'}) - χ(r_{h'}) + p_g_{h'} - p_g`.
pub fn delta_qgorenstein(g: &Graph, curve: &CurveData, pg: &PgData) -> Result<DeltaReport, InvariantError> {
    let (h, s, arg) = shifted(g, curve)?;
    let terms = vec![
        term("chi_h", g.chi_h(&arg, &h, &s)?, 1),
        term("chi(r)-chi(s)", g.chi(h.rep()) - g.chi(&s), -1),
        term("pg_h", pg.pg_of(g, &h)?, 1),
        term("pg", pg.pg(g)?, -1),
    ];
    assemble(pg.path(), terms)
}

/// Rational graphs: `δ = χ_{h'}(Z_K + l'_C - s_{h'})`.
pub fn delta_rational(g: &Graph, curve: &CurveData) -> Result<DeltaReport, InvariantError> {
    if !is_rational(g) {
        return Err(InvariantError::NotRational);
    }
    let (h, s, arg) = shifted(g, curve)?;
    assemble(DeltaPath::Rational, vec![term("chi_h", g.chi_h(&arg, &h, &s)?, 1)])
}

/// The coefficients of `Z_K + l'_C - s_{h'}` on the arrow vertices; for a
/// rational graph these are the conductor exponents of the branches.
pub fn curve_conductor_rational(g: &Graph, curve: &CurveData) -> Result<BTreeMap<usize, i64>, InvariantError> {
    if !is_rational(g) {
        return Err(InvariantError::NotRational);
    }
    let mut seen = std::collections::BTreeSet::new();
    for &v in curve.arrows() {
        if !seen.insert(v) {
            return Err(InvariantError::MultipleArrowsOnVertex(v));
        }
    }
    let (_, _, arg) = shifted(g, curve)?;
    curve
        .arrows()
        .iter()
        .map(|&v| Ok((v, natural(&arg[v])?)))
        .collect()
}

/// The pieces of the genus formula for the semigroup of a star, with
/// `h' = [Z_K] + h_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusTerms {
    /// `χ_{h'}(Z_K + E*_0 - s_{h'})` with `h' = [Z_K] + h_0`.
    pub chi_term: Rational,
    pub chi_s: Rational,
    pub chi_r: Rational,
    pub pg_shifted: i64,
    pub pg: i64,
    /// `š = (s_{h'})_0`.
    pub s_central: Rational,
}

pub fn genus_terms(star: &Star, table: &PgTable) -> Result<GenusTerms, InvariantError> {
    let g = star.graph();
    let curve = CurveData::from_arrows(g, &[star.central()])?;
    let (h, s, arg) = shifted(g, &curve)?;
    Ok(GenusTerms {
        chi_term: g.chi_h(&arg, &h, &s)?,
        chi_s: g.chi(&s),
        chi_r: g.chi(h.rep()),
        pg_shifted: table.get(&h),
        pg: table.total(),
        s_central: s[star.central()].clone(),
    })
}

/// `g(S) = χ_{h'}(Z_K + E*_0 - s_{h'}) + χ(s_{h'}) - χ(r_{h'}) + p_g_{h'} - p_g`.
pub fn semigroup_genus(star: &Star, table: &PgTable) -> Result<i64, InvariantError> {
    let t = genus_terms(star, table)?;
    natural(&(t.chi_term + t.chi_s - t.chi_r + int(t.pg_shifted) - int(t.pg)))
}

/// `g(S) = c/2 + š/2 - χ(r_{h'}) + p_g_{h'} - p_g` with `c` from the conductor formula.
pub fn genus_reduced(star: &Star, table: &PgTable) -> Result<i64, InvariantError> {
    let t = genus_terms(star, table)?;
    let c = conductor_formula(star);
    let half = Rational::new(1.into(), 2.into());
    natural(&(c * &half + &t.s_central * &half - t.chi_r + int(t.pg_shifted) - int(t.pg)))
}

/// Rational stars only: `g(S) = χ_{h'}(Z_K + E*_0 - s_{h'})`.
pub fn semigroup_genus_rational(star: &Star) -> Result<i64, InvariantError> {
    let g = star.graph();
    let curve = CurveData::from_arrows(g, &[star.central()])?;
    Ok(delta_rational(g, &curve)?.delta)
}

/// Four ways to decide whether the semigroup is symmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdicts {
    /// `s ∈ S ⇔ c - 1 - s ∉ S`, checked on the gap set.
    pub direct: bool,
    /// `p_g - p_g_{h'} = š/2 - χ(r_{h'})`.
    pub criterion: bool,
    /// `[Z_K + E*_0] = 0`, which forces symmetry.
    pub sufficient_zk_e0: bool,
    /// For rational graphs: `b0 >= d` or `[Z_K + E*_0] = 0`. Sufficient
    /// but not necessary: `(-4; 2×(2,1), (3,2), (10,7), (11,8))` is rational
    /// with semigroup `⟨2, 3⟩` and fails both conditions.
    pub rational_criterion: Option<bool>,
}

pub fn is_symmetric(star: &Star, table: &PgTable) -> Result<SymmetryVerdicts, InvariantError> {
    let g = star.graph();
    let t = genus_terms(star, table)?;
    let half = Rational::new(1.into(), 2.into());
    let criterion = int(t.pg - t.pg_shifted) == &t.s_central * &half - &t.chi_r;
    let sufficient_zk_e0 = star.shifted_canonical_class().is_zero();
    let rational_criterion = is_rational(g)
        .then(|| star.data().b0() >= star.data().num_legs() as i64 || sufficient_zk_e0);
    Ok(SymmetryVerdicts {
        direct: semigroup(star.data()).is_symmetric(),
        criterion,
        sufficient_zk_e0,
        rational_criterion,
    })
}

/// `(p_g_h - p_g_{[Z_K]-h}, χ(r_h) - χ(r_{[Z_K]-h}))`; the two agree.
pub fn duality_defect(g: &Graph, table: &PgTable, h: &ClassElt) -> (Rational, Rational) {
    let dual = g.class_sub(&g.canonical_class(), h);
    let lhs = int(table.get(h) - table.get(&dual));
    let rhs = g.chi(h.rep()) - g.chi(dual.rep());
    (lhs, rhs)
}

/// Whether a rational quantity is a nonnegative integer.
pub fn is_natural(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}
