//! Star-shaped graphs in Seifert normal form.
//!
//! A star-shaped graph has a central vertex with Euler number `-b0` and `d`
//! legs; leg `i` is the chain whose Euler numbers are `-b_i1, ..., -b_iν`
//! with `α_i/ω_i = [b_i1, ..., b_iν]` (Hirzebruch–Jung, all entries `>= 2`).
//! The quasi-linear function `N(ℓ) = b0·ℓ - Σ ⌈ℓ ω_i / α_i⌉` cuts out the
//! semigroup `S = {ℓ >= 0 : N(ℓ) >= 0}`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::cycle::QCycle;
use crate::graph::{ClassElt, Graph, GraphError, GraphInput};
use crate::laufer::minimal_class_cycle;
use crate::rational::{int, lcm_all, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeifertError {
    #[error("invalid leg ({alpha}, {omega}): need 0 < ω < α and gcd(α, ω) = 1")]
    InvalidPair { alpha: i64, omega: i64 },
    #[error("continued fraction entry {0} is below 2")]
    InvalidEntry(i64),
    #[error("central Euler number must be negative, got b0 = {0}")]
    InvalidB0(i64),
    #[error("orbifold Euler number e = {0} is not negative")]
    NonNegativeEuler(String),
    #[error("graph is not star-shaped: {0}")]
    NotStarShaped(String),
    #[error("no unique vertex of valency >= 3 and no central vertex given")]
    AmbiguousCentral,
    #[error("leg vertex {vertex} has Euler number {euler}; legs need entries <= -2")]
    IllegalLegDecoration { vertex: usize, euler: i64 },
    #[error("N(ℓ) is defined for ℓ >= 0, got {0}")]
    NegativeArgument(i64),
    #[error("cannot parse Seifert data {0:?}; expected \"b0=2;legs=3/1,7/4\"")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Hirzebruch–Jung expansion `α/ω = b1 - 1/(b2 - 1/(...))`.
pub fn hj_expand(alpha: i64, omega: i64) -> Result<Vec<i64>, SeifertError> {
    if !(0 < omega && omega < alpha) || alpha.gcd(&omega) != 1 {
        return Err(SeifertError::InvalidPair { alpha, omega });
    }
    let (mut p, mut q) = (alpha, omega);
    let mut out = Vec::new();
    while q > 0 {
        let b = Integer::div_ceil(&p, &q);
        out.push(b);
        (p, q) = (q, b * q - p);
    }
    Ok(out)
}

/// Inverse of [`hj_expand`].
pub fn hj_value(entries: &[i64]) -> Result<(i64, i64), SeifertError> {
    if let Some(&b) = entries.iter().find(|&&b| b < 2) {
        return Err(SeifertError::InvalidEntry(b));
    }
    let Some((&last, rest)) = entries.split_last() else {
        return Err(SeifertError::InvalidEntry(0));
    };
    let (mut p, mut q) = (last, 1i64);
    for &b in rest.iter().rev() {
        (p, q) = (b * p - q, p);
    }
    Ok((p, q))
}

/// Normalized Seifert invariants `(-b0; (α_i, ω_i))`, legs sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertData {
    b0: i64,
    legs: Vec<(i64, i64)>,
}

impl SeifertData {
    /// Validates the legs and requires `e < 0`.
    pub fn new(b0: i64, legs: &[(i64, i64)]) -> Result<Self, SeifertError> {
        if b0 < 1 {
            return Err(SeifertError::InvalidB0(b0));
        }
        for &(alpha, omega) in legs {
            if !(0 < omega && omega < alpha) || alpha.gcd(&omega) != 1 {
                return Err(SeifertError::InvalidPair { alpha, omega });
            }
        }
        let mut legs = legs.to_vec();
        legs.sort_unstable();
        let sf = SeifertData { b0, legs };
        let e = sf.euler_number();
        if !e.is_negative() {
            return Err(SeifertError::NonNegativeEuler(crate::rational::format_rational(&e)));
        }
        Ok(sf)
    }

    pub fn b0(&self) -> i64 {
        self.b0
    }

    pub fn legs(&self) -> &[(i64, i64)] {
        &self.legs
    }

    /// Number of legs `d`.
    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    /// `e = -b0 + Σ ω_i/α_i`.
    pub fn euler_number(&self) -> Rational {
        self.legs
            .iter()
            .fold(int(-self.b0), |acc, &(a, w)| acc + rat(w, a))
    }

    /// `N(ℓ) = b0·ℓ - Σ ⌈ℓ ω_i / α_i⌉`.
    pub fn n_value(&self, l: i64) -> Result<i64, SeifertError> {
        if l < 0 {
            return Err(SeifertError::NegativeArgument(l));
        }
        Ok(self.n_unchecked(l))
    }

    pub(crate) fn n_unchecked(&self, l: i64) -> i64 {
        let mut n = self.b0 as i128 * l as i128;
        for &(a, w) in &self.legs {
            n -= Integer::div_ceil(&(l as i128 * w as i128), &(a as i128));
        }
        n as i64
    }

    /// `L* = ⌈d/|e|⌉`; `N(ℓ) >= 0` for every `ℓ >= L*`.
    pub fn scan_bound(&self) -> i64 {
        let bound = int(self.legs.len() as i64) / self.euler_number().abs();
        bound.ceil().to_integer().try_into().expect("scan bound fits in i64")
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-{};", self.b0)?;
        for (i, (a, w)) in self.legs.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}({a},{w})")?;
        }
        f.write_str(")")
    }
}

/// Parses `b0=2;legs=3/1,3/1,7/4,7/4` (an empty `legs=` is allowed).
impl FromStr for SeifertData {
    type Err = SeifertError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SeifertError::Parse(s.to_string());
        let mut b0 = None;
        let mut legs = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "b0" => b0 = Some(value.trim().parse::<i64>().map_err(|_| bad())?),
                "legs" => {
                    let mut list = Vec::new();
                    for leg in value.split(',').map(str::trim).filter(|l| !l.is_empty()) {
                        let (a, w) = leg.split_once('/').ok_or_else(bad)?;
                        let a = a.trim().parse::<i64>().map_err(|_| bad())?;
                        let w = w.trim().parse::<i64>().map_err(|_| bad())?;
                        list.push((a, w));
                    }
                    legs = Some(list);
                }
                _ => return Err(bad()),
            }
        }
        SeifertData::new(b0.ok_or_else(bad)?, &legs.unwrap_or_default())
    }
}

/// A star-shaped graph together with its Seifert data and layout.
///
/// `legs[i]` lists the vertices of leg `i` starting next to the central
/// vertex; legs are ordered like [`SeifertData::legs`].
#[derive(Debug, Clone)]
pub struct Star {
    data: SeifertData,
    graph: Graph,
    central: usize,
    legs: Vec<Vec<usize>>,
}

impl Star {
    /// The normal-form graph: central vertex 0, then each leg in order.
    pub fn from_seifert(sf: &SeifertData) -> Result<Star, SeifertError> {
        let mut eulers = vec![-sf.b0];
        let mut edges = Vec::new();
        let mut legs = Vec::new();
        for &(a, w) in &sf.legs {
            let mut prev = 0;
            let mut chain = Vec::new();
            for b in hj_expand(a, w)? {
                let v = eulers.len();
                eulers.push(-b);
                edges.push((prev, v));
                chain.push(v);
                prev = v;
            }
            legs.push(chain);
        }
        let graph = Graph::build(&GraphInput::new(&eulers, &edges).with_central(0))?;
        Ok(Star {
            data: sf.clone(),
            graph,
            central: 0,
            legs,
        })
    }

    /// Reads the Seifert data off a star-shaped graph.
    pub fn from_graph(g: &Graph) -> Result<Star, SeifertError> {
        let n = g.num_vertices();
        let branching: Vec<usize> = (0..n).filter(|&v| g.valency(v) >= 3).collect();
        let central = match (g.central(), branching.as_slice()) {
            (Some(c), _) => c,
            (None, [c]) => *c,
            (None, []) => return Err(SeifertError::AmbiguousCentral),
            (None, _) => {
                return Err(SeifertError::NotStarShaped(format!(
                    "vertices {branching:?} all have valency >= 3"
                )))
            }
        };
        if let Some(&v) = branching.iter().find(|&&v| v != central) {
            return Err(SeifertError::NotStarShaped(format!(
                "vertex {v} off the centre has valency {}",
                g.valency(v)
            )));
        }
        let b0 = -g.euler(central);
        if b0 < 1 {
            return Err(SeifertError::InvalidB0(b0));
        }

        let mut legs = Vec::new();
        for &start in g.neighbors(central) {
            let mut chain = vec![start];
            let mut prev = central;
            let mut cur = start;
            loop {
                if g.euler(cur) > -2 {
                    return Err(SeifertError::IllegalLegDecoration {
                        vertex: cur,
                        euler: g.euler(cur),
                    });
                }
                let next = g.neighbors(cur).iter().copied().find(|&w| w != prev);
                match next {
                    Some(w) => {
                        prev = cur;
                        cur = w;
                        chain.push(cur);
                    }
                    None => break,
                }
            }
            let entries: Vec<i64> = chain.iter().map(|&v| -g.euler(v)).collect();
            legs.push((hj_value(&entries)?, chain));
        }
        legs.sort_by(|a, b| a.0.cmp(&b.0));
        let pairs: Vec<(i64, i64)> = legs.iter().map(|(p, _)| *p).collect();
        let data = SeifertData::new(b0, &pairs)?;
        Ok(Star {
            data,
            graph: g.clone(),
            central,
            legs: legs.into_iter().map(|(_, c)| c).collect(),
        })
    }

    pub fn data(&self) -> &SeifertData {
        &self.data
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn central(&self) -> usize {
        self.central
    }

    pub fn legs(&self) -> &[Vec<usize>] {
        &self.legs
    }

    /// The last vertex of each leg.
    pub fn leg_ends(&self) -> Vec<usize> {
        self.legs.iter().map(|c| *c.last().expect("legs are nonempty")).collect()
    }

    /// `h_0 = [E*_0]`, the class of the central dual cycle.
    pub fn central_class(&self) -> ClassElt {
        self.graph.dual_class(self.central)
    }

    /// `[Z_K] + h_0`.
    pub fn shifted_canonical_class(&self) -> ClassElt {
        self.graph
            .class_add(&self.graph.canonical_class(), &self.central_class())
    }

    /// `s_{[Z_K]+h_0}`.
    pub fn shifted_canonical_cycle(&self) -> QCycle {
        minimal_class_cycle(&self.graph, &self.shifted_canonical_class())
    }
}

/// The Seifert data of a star-shaped graph.
pub fn seifert_of(g: &Graph) -> Result<SeifertData, SeifertError> {
    Ok(Star::from_graph(g)?.data)
}

/// The normal-form graph of `sf`.
pub fn star_graph(sf: &SeifertData) -> Result<Graph, SeifertError> {
    Ok(Star::from_seifert(sf)?.graph)
}

/// Scalars read off the Seifert data alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarInvariants {
    /// Orbifold Euler number `e`.
    pub e: Rational,
    pub alpha_lcm: i64,
    /// `α_1 ⋯ α_d · |e|`, the order of `H`.
    pub h_order: Rational,
    /// `lcm(α) · |e|`, the order of `[E*_0]`.
    pub o_order: Rational,
    /// `γ = (d - 2 - Σ 1/α_i) / |e|`.
    pub gamma: Rational,
}

pub fn scalar_invariants(sf: &SeifertData) -> ScalarInvariants {
    let e = sf.euler_number();
    let abs_e = e.abs();
    let alpha_lcm = lcm_all(sf.legs.iter().map(|&(a, _)| a));
    let alpha_prod = sf
        .legs
        .iter()
        .fold(int(1), |acc, &(a, _)| acc * int(a));
    let inv_sum = sf
        .legs
        .iter()
        .fold(int(0), |acc, &(a, _)| acc + rat(1, a));
    let gamma = (int(sf.legs.len() as i64 - 2) - inv_sum) / &abs_e;
    ScalarInvariants {
        h_order: alpha_prod * &abs_e,
        o_order: int(alpha_lcm) * &abs_e,
        alpha_lcm,
        gamma,
        e,
    }
}

/// `S = {ℓ : N(ℓ) >= 0}` described by its gaps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupView {
    pub source: SeifertData,
    /// Members below the conductor, starting with 0.
    pub small_elements: Vec<i64>,
    pub gaps: Vec<i64>,
    pub conductor: i64,
    /// `conductor - 1`; `-1` when `S` is all of `N`.
    pub frobenius: i64,
    pub genus: i64,
}

impl SemigroupView {
    pub fn contains(&self, l: i64) -> bool {
        l >= 0 && self.gaps.binary_search(&l).is_err()
    }

    /// `s ∈ S ⇔ c - 1 - s ∉ S` for `0 <= s < c`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.conductor).all(|s| self.contains(s) != self.contains(self.conductor - 1 - s))
    }
}

/// Scans `N` up to the bound where it is guaranteed nonnegative.
pub fn semigroup(sf: &SeifertData) -> SemigroupView {
    let bound = sf.scan_bound();
    let mut gaps = Vec::new();
    for l in 0..=bound {
        if sf.n_unchecked(l) < 0 {
            gaps.push(l);
        }
    }
    let conductor = gaps.last().map_or(0, |g| g + 1);
    let small_elements = (0..conductor).filter(|l| gaps.binary_search(l).is_err()).collect();
    SemigroupView {
        source: sf.clone(),
        small_elements,
        genus: gaps.len() as i64,
        frobenius: conductor - 1,
        conductor,
        gaps,
    }
}

/// `c = γ + 1 + 1/|e| - (s_{[Z_K]+h_0})_0`, straight from the lattice.
pub fn conductor_formula(star: &Star) -> Rational {
    let sc = scalar_invariants(&star.data);
    let s = star.shifted_canonical_cycle();
    sc.gamma + int(1) + sc.e.abs().recip() - &s[star.central]
}

/// [`conductor_formula`] checked for integrality and against the gap scan.
pub fn checked_conductor(star: &Star) -> Result<i64, SeifertError> {
    let c = conductor_formula(star);
    let direct = semigroup(&star.data).conductor;
    match crate::rational::to_i64(&c) {
        Some(v) if v == direct => Ok(v),
        _ => Err(SeifertError::InternalInconsistency(format!(
            "conductor formula gives {}, gap scan gives {direct}",
            crate::rational::format_rational(&c)
        ))),
    }
}
