//! Resolution graphs and their lattices `L ⊂ L'`.
//!
//! A [`Graph`] is a validated plumbing tree with a negative definite
//! intersection matrix `M`. Building one caches everything the rest of the
//! crate leans on: the exact inverse, the dual cycles `E*_v` (columns of
//! `-M⁻¹`), the canonical cycle `Z_K` and the discriminant group `H = L'/L`.
//!
//! Elements of `L'` have two coordinate systems. [`QCycle`] holds the
//! rational coefficients in the `E_v` basis. The "dual coordinates" are the
//! integers `y_v = -(l', E_v)`, so that `l' = Σ y_v E*_v`; `l'` is anti-nef
//! exactly when `y >= 0`. The hot loops (Laufer sequences, class sweeps,
//! series enumeration) run on dual coordinates or on numerators over the
//! common denominator `D = |det M|`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cycle::QCycle;
use crate::group::{ClassKey, DiscriminantGroup, GroupError};
use crate::rational::{int, rat128, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInput {
    pub id: usize,
    pub euler: i64,
}

/// The on-disk graph schema:
/// `{"vertices":[{"id":0,"euler":-2}],"edges":[[0,1]],"arrows":[6],"central":3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphInput {
    pub vertices: Vec<VertexInput>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<usize>,
}

impl GraphInput {
    /// Vertices `0..n` with the given Euler numbers, in order.
    pub fn new(eulers: &[i64], edges: &[(usize, usize)]) -> Self {
        GraphInput {
            vertices: eulers
                .iter()
                .enumerate()
                .map(|(id, &euler)| VertexInput { id, euler })
                .collect(),
            edges: edges.iter().map(|&(a, b)| [a, b]).collect(),
            arrows: Vec::new(),
            central: None,
        }
    }

    pub fn with_arrows(mut self, arrows: &[usize]) -> Self {
        self.arrows = arrows.to_vec();
        self
    }

    pub fn with_central(mut self, central: usize) -> Self {
        self.central = Some(central);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex id {0}")]
    DuplicateVertexId(usize),
    #[error("vertex id {id} out of range: ids must be 0..{n}")]
    VertexIdOutOfRange { id: usize, n: usize },
    #[error("edge [{0}, {1}] references an unknown vertex")]
    UnknownVertex(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("intersection form is not negative definite: leading minor of -M of size {size} is {value}")]
    NotNegativeDefinite { size: usize, value: String },
    #[error("arrow at unknown vertex {0}")]
    BadArrow(usize),
    #[error("central vertex {0} does not exist")]
    BadCentral(usize),
    #[error("graph too large for machine-size class arithmetic: {0}")]
    TooLarge(String),
    #[error("cycle has {got} coordinates, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cycle is not in the dual lattice L': (l', E_{vertex}) = {pairing}")]
    NotInDualLattice { vertex: usize, pairing: String },
    #[error("expected an integral cycle, coordinate {vertex} is {value}")]
    NonIntegralArgument { vertex: usize, value: String },
    #[error("cycle lies in a different class than the one supplied")]
    ClassMismatch,
}

impl From<GroupError> for GraphError {
    fn from(e: GroupError) -> Self {
        GraphError::TooLarge(e.to_string())
    }
}

/// Cached lattice data of a validated graph.
#[derive(Debug, Clone)]
pub struct IntersectionData {
    m: Vec<Vec<i64>>,
    det_abs: i64,
    /// `D · (-M⁻¹)`, all entries positive integers.
    scaled_inv: Vec<Vec<i64>>,
    duals: Vec<QCycle>,
    zk: QCycle,
    /// Dual coordinates of `Z_K`: `b_v - 2`.
    zk_dual: Vec<i64>,
    /// Numerators of `Z_K` over `D`.
    zk_num: Vec<i64>,
    group: DiscriminantGroup,
    /// Numerators over `D` of `r_g` for each Smith generator `g`.
    gen_nums: Vec<Vec<i64>>,
}

/// A class `h ∈ H`, carried together with its minimal representative `r_h`
/// (the unique cycle of the class with every coefficient in `[0, 1)`).
#[derive(Debug, Clone)]
pub struct ClassElt {
    key: ClassKey,
    rep: QCycle,
}

impl ClassElt {
    pub fn key(&self) -> &ClassKey {
        &self.key
    }

    /// `r_h`.
    pub fn rep(&self) -> &QCycle {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.key.0.iter().all(|&x| x == 0)
    }
}

impl PartialEq for ClassElt {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for ClassElt {}

#[derive(Debug, Clone)]
pub struct Graph {
    eulers: Vec<i64>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    arrows: Vec<usize>,
    central: Option<usize>,
    data: IntersectionData,
}

impl Graph {
    pub fn build(input: &GraphInput) -> Result<Graph, GraphError> {
        let n = input.vertices.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut eulers = vec![None; n];
        for v in &input.vertices {
            if v.id >= n {
                return Err(GraphError::VertexIdOutOfRange { id: v.id, n });
            }
            if eulers[v.id].replace(v.euler).is_some() {
                return Err(GraphError::DuplicateVertexId(v.id));
            }
        }
        let eulers: Vec<i64> = eulers.into_iter().map(|e| e.expect("ids are a permutation")).collect();

        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(input.edges.len());
        for &[a, b] in &input.edges {
            if a >= n || b >= n {
                return Err(GraphError::UnknownVertex(a, b));
            }
            if a == b {
                return Err(GraphError::NotATree(format!("self-loop at vertex {a}")));
            }
            if adj[a].contains(&b) {
                return Err(GraphError::NotATree(format!("repeated edge [{a}, {b}]")));
            }
            adj[a].push(b);
            adj[b].push(a);
            edges.push((a, b));
        }
        if edges.len() != n - 1 {
            return Err(GraphError::NotATree(format!(
                "{} edges on {} vertices",
                edges.len(),
                n
            )));
        }
        let reached = bfs_order(&adj, 0).len();
        if reached != n {
            return Err(GraphError::NotATree(format!(
                "disconnected: {reached} of {n} vertices reachable from 0"
            )));
        }
        for &a in &input.arrows {
            if a >= n {
                return Err(GraphError::BadArrow(a));
            }
        }
        if let Some(c) = input.central {
            if c >= n {
                return Err(GraphError::BadCentral(c));
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }

        let mut m = vec![vec![0i64; n]; n];
        for v in 0..n {
            m[v][v] = eulers[v];
        }
        for &(a, b) in &edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        let data = IntersectionData::compute(&m, &eulers)?;
        Ok(Graph {
            eulers,
            edges,
            adj,
            arrows: input.arrows.clone(),
            central: input.central,
            data,
        })
    }

    /// Convenience for graphs without arrows or a central mark.
    pub fn from_eulers(eulers: &[i64], edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        Graph::build(&GraphInput::new(eulers, edges))
    }

    pub fn to_input(&self) -> GraphInput {
        let mut input = GraphInput::new(&self.eulers, &self.edges);
        input.arrows = self.arrows.clone();
        input.central = self.central;
        input
    }

    /// Same graph with a different set of curve arrows.
    pub fn with_arrows(&self, arrows: &[usize]) -> Graph {
        let mut g = self.clone();
        g.arrows = arrows.to_vec();
        g
    }

    pub fn with_central(&self, central: Option<usize>) -> Graph {
        let mut g = self.clone();
        g.central = central;
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.eulers.len()
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.eulers[v]
    }

    pub fn eulers(&self) -> &[i64] {
        &self.eulers
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn central(&self) -> Option<usize> {
        self.central
    }

    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.data.m
    }

    /// `|det M| = |H|`.
    pub fn det_abs(&self) -> i64 {
        self.data.det_abs
    }

    pub fn group_order(&self) -> u64 {
        self.data.det_abs as u64
    }

    pub fn group(&self) -> &DiscriminantGroup {
        &self.data.group
    }

    /// `E*_v`.
    pub fn dual(&self, v: usize) -> &QCycle {
        &self.data.duals[v]
    }

    pub fn duals(&self) -> &[QCycle] {
        &self.data.duals
    }

    /// `-M⁻¹` scaled by `D = |det M|`; entry `(u, v)` is `D · (E*_v)_u`.
    pub fn scaled_inverse(&self) -> &[Vec<i64>] {
        &self.data.scaled_inv
    }

    /// The anti-canonical cycle `Z_K`.
    pub fn canonical_cycle(&self) -> &QCycle {
        &self.data.zk
    }

    pub fn canonical_dual_coords(&self) -> &[i64] {
        &self.data.zk_dual
    }

    pub fn is_numerically_gorenstein(&self) -> bool {
        self.data.zk.is_integral()
    }

    fn check_len(&self, x: &QCycle) -> Result<(), GraphError> {
        if x.len() != self.num_vertices() {
            return Err(GraphError::DimensionMismatch {
                expected: self.num_vertices(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `(x, E_v)`.
    pub fn pairing_with_base(&self, x: &QCycle, v: usize) -> Rational {
        let mut s = x[v].clone() * int(self.eulers[v]);
        for &w in &self.adj[v] {
            s += &x[w];
        }
        s
    }

    /// The intersection form `xᵀ M y`, extended to rational cycles.
    pub fn pairing(&self, x: &QCycle, y: &QCycle) -> Result<Rational, GraphError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok((0..self.num_vertices())
            .map(|v| &x[v] * self.pairing_with_base(y, v))
            .sum())
    }

    /// Anti-nef: `(l', E_v) <= 0` for every vertex.
    pub fn is_antinef(&self, x: &QCycle) -> bool {
        (0..self.num_vertices()).all(|v| !self.pairing_with_base(x, v).is_positive())
    }

    /// Dual coordinates `y_v = -(l', E_v)`; fails unless `l' ∈ L'`.
    pub fn dual_coords(&self, x: &QCycle) -> Result<Vec<i64>, GraphError> {
        self.check_len(x)?;
        (0..self.num_vertices())
            .map(|v| {
                let p = self.pairing_with_base(x, v);
                if !p.is_integer() {
                    return Err(GraphError::NotInDualLattice {
                        vertex: v,
                        pairing: crate::rational::format_rational(&p),
                    });
                }
                (-p.to_integer())
                    .to_i64()
                    .ok_or_else(|| GraphError::TooLarge("dual coordinate".into()))
            })
            .collect()
    }

    /// `Σ y_v E*_v` in the `E_v` basis.
    pub fn cycle_from_dual(&self, y: &[i64]) -> QCycle {
        let num = self.numerators_from_dual(y);
        self.cycle_from_numerators(&num)
    }

    /// Numerators over `D` of `Σ y_v E*_v`.
    pub fn numerators_from_dual(&self, y: &[i64]) -> Vec<i128> {
        self.data
            .scaled_inv
            .iter()
            .map(|row| row.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum())
            .collect()
    }

    pub fn cycle_from_numerators(&self, num: &[i128]) -> QCycle {
        let d = self.data.det_abs as i128;
        QCycle::new(num.iter().map(|&x| rat128(x, d)).collect())
    }

    /// Dual coordinates of the cycle with numerators `num` over `D`.
    pub fn dual_from_numerators(&self, num: &[i128]) -> Vec<i64> {
        let d = self.data.det_abs as i128;
        (0..self.num_vertices())
            .map(|v| {
                let mut s = num[v] * self.eulers[v] as i128;
                for &w in &self.adj[v] {
                    s += num[w];
                }
                debug_assert_eq!(s % d, 0, "numerators not in L'");
                (-s / d) as i64
            })
            .collect()
    }

    // Classes

    /// `[l']` with its representative `r_{[l']}` = fractional part of `l'`.
    pub fn class_of(&self, x: &QCycle) -> Result<ClassElt, GraphError> {
        let y = self.dual_coords(x)?;
        Ok(ClassElt {
            key: self.data.group.key(&y),
            rep: x.frac(),
        })
    }

    pub fn class_key_of_dual(&self, y: &[i64]) -> ClassKey {
        self.data.group.key(y)
    }

    /// Numerators over `D` of `r_h`, each in `[0, D)`.
    pub fn rep_numerators(&self, key: &ClassKey) -> Vec<i64> {
        let d = self.data.det_abs;
        let mut num = vec![0i64; self.num_vertices()];
        for (c, g) in key.0.iter().zip(&self.data.gen_nums) {
            for (x, gv) in num.iter_mut().zip(g) {
                *x = ((*x as i128 + *c as i128 * *gv as i128).rem_euclid(d as i128)) as i64;
            }
        }
        num
    }

    pub fn class_from_key(&self, key: &ClassKey) -> ClassElt {
        let num: Vec<i128> = self.rep_numerators(key).into_iter().map(i128::from).collect();
        ClassElt {
            key: key.clone(),
            rep: self.cycle_from_numerators(&num),
        }
    }

    pub fn class_zero(&self) -> ClassElt {
        self.class_from_key(&self.data.group.zero())
    }

    pub fn class_add(&self, a: &ClassElt, b: &ClassElt) -> ClassElt {
        self.class_from_key(&self.data.group.add(&a.key, &b.key))
    }

    pub fn class_neg(&self, a: &ClassElt) -> ClassElt {
        self.class_from_key(&self.data.group.neg(&a.key))
    }

    pub fn class_sub(&self, a: &ClassElt, b: &ClassElt) -> ClassElt {
        self.class_add(a, &self.class_neg(b))
    }

    /// `[Z_K]`.
    pub fn canonical_class(&self) -> ClassElt {
        self.class_of(&self.data.zk).expect("Z_K lies in L'")
    }

    /// `[E*_v]`.
    pub fn dual_class(&self, v: usize) -> ClassElt {
        self.class_from_key(&self.data.group.key_sparse(&[(v, 1)]))
    }

    pub fn order_of(&self, h: &ClassElt) -> u64 {
        self.data.group.order_of(&h.key)
    }

    /// All `|H|` classes, in a fixed order.
    pub fn classes(&self) -> impl Iterator<Item = ClassKey> + '_ {
        self.data.group.elements()
    }

    // Riemann–Roch

    /// `χ(l') = (Z_K - l', l') / 2`.
    pub fn chi(&self, x: &QCycle) -> Rational {
        let diff = &self.data.zk - x;
        self.pairing(&diff, x).expect("same vertex set") / int(2)
    }

    /// `χ_h(l) = (Z_K - 2 s_h - l, l) / 2` for integral `l`.
    pub fn chi_h(&self, l: &QCycle, h: &ClassElt, s_h: &QCycle) -> Result<Rational, GraphError> {
        self.check_len(l)?;
        self.check_len(s_h)?;
        if let Some(v) = (0..l.len()).find(|&v| !l[v].is_integer()) {
            return Err(GraphError::NonIntegralArgument {
                vertex: v,
                value: crate::rational::format_rational(&l[v]),
            });
        }
        if self.class_of(s_h)?.key != h.key {
            return Err(GraphError::ClassMismatch);
        }
        let base = &(&self.data.zk - &s_h.scale(&int(2))) - l;
        Ok(self.pairing(&base, l)? / int(2))
    }

    /// `χ` of the cycle with numerators `num` over `D`, as an exact rational.
    /// Runs in `O(|V| + |edges|)`.
    pub fn chi_numerators(&self, num: &[i64]) -> Rational {
        let d = self.data.det_abs as i128;
        let mut total: i128 = 0;
        for v in 0..self.num_vertices() {
            let mut mx = num[v] as i128 * self.eulers[v] as i128;
            for &w in &self.adj[v] {
                mx += num[w] as i128;
            }
            total += (self.data.zk_num[v] as i128 - num[v] as i128) * mx;
        }
        rat128(total, 2 * d * d)
    }

    /// `χ(Σ y_v E*_v)` straight from dual coordinates.
    pub fn chi_dual(&self, y: &[i64]) -> Rational {
        let num: Vec<i64> = self
            .numerators_from_dual(y)
            .into_iter()
            .map(|x| x as i64)
            .collect();
        self.chi_numerators(&num)
    }

    /// Vertices in breadth-first order from `root`.
    pub fn bfs_from(&self, root: usize) -> Vec<usize> {
        bfs_order(&self.adj, root)
    }
}

fn bfs_order(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut order = Vec::with_capacity(adj.len());
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

impl IntersectionData {
    fn compute(m: &[Vec<i64>], eulers: &[i64]) -> Result<Self, GraphError> {
        let n = m.len();
        let neg: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(-x)).collect())
            .collect();
        let det = leading_minors_positive(&neg)?;
        let det_abs = det
            .to_i64()
            .ok_or_else(|| GraphError::TooLarge(format!("|det M| = {det}")))?;

        let inv = invert(&neg);
        let mut scaled_inv = vec![vec![0i64; n]; n];
        for u in 0..n {
            for v in 0..n {
                let x = &inv[u][v] * Rational::from_integer(det.clone());
                debug_assert!(x.is_integer());
                let x = x.to_integer();
                if !x.is_positive() {
                    return Err(GraphError::NotNegativeDefinite {
                        size: n,
                        value: format!("entry ({u},{v}) of -M^-1 is {x}/{det}, not positive"),
                    });
                }
                scaled_inv[u][v] = x
                    .to_i64()
                    .ok_or_else(|| GraphError::TooLarge("entry of D·M⁻¹".into()))?;
            }
        }
        let duals: Vec<QCycle> = (0..n)
            .map(|v| QCycle::new((0..n).map(|u| inv[u][v].clone()).collect()))
            .collect();

        let zk_dual: Vec<i64> = eulers.iter().map(|&e| -e - 2).collect();
        let zk_num: Vec<i64> = scaled_inv
            .iter()
            .map(|row| row.iter().zip(&zk_dual).map(|(&a, &b)| a * b).sum())
            .collect();
        let zk = QCycle::new(
            zk_num
                .iter()
                .map(|&x| Rational::new(BigInt::from(x), BigInt::from(det_abs)))
                .collect(),
        );

        let group = DiscriminantGroup::from_matrix(m)?;
        if group.order() != det_abs as u64 {
            return Err(GraphError::TooLarge(format!(
                "Smith form order {} disagrees with |det M| = {det_abs}",
                group.order()
            )));
        }
        let d = BigInt::from(det_abs);
        let gen_nums = group
            .factors()
            .iter()
            .enumerate()
            .map(|(j, _)| {
                let mut key = group.zero();
                key.0[j] = 1;
                let y = group.representative(&key);
                (0..n)
                    .map(|u| {
                        let s: BigInt = scaled_inv[u]
                            .iter()
                            .zip(&y)
                            .map(|(&a, b)| BigInt::from(a) * b)
                            .sum();
                        s.mod_floor(&d).to_i64().expect("reduced below D")
                    })
                    .collect()
            })
            .collect();
        Ok(IntersectionData {
            m: m.to_vec(),
            det_abs,
            scaled_inv,
            duals,
            zk,
            zk_dual,
            zk_num,
            group,
            gen_nums,
        })
    }
}

/// Fraction-free elimination on a symmetric matrix `a` (here `-M`); returns
/// `det a` after checking every leading principal minor is positive.
fn leading_minors_positive(a: &[Vec<BigInt>]) -> Result<BigInt, GraphError> {
    let n = a.len();
    let mut a = a.to_vec();
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Err(GraphError::NotNegativeDefinite {
                size: k + 1,
                value: a[k][k].to_string(),
            });
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(prev)
}

/// Exact inverse by Gauss–Jordan over the rationals. `a` must be invertible.
fn invert(a: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| int(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("matrix is invertible");
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= &p;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn a1() -> Graph {
        Graph::from_eulers(&[-2], &[]).unwrap()
    }

    #[test]
    fn a1_basics() {
        let g = a1();
        assert_eq!(g.intersection_matrix(), &[vec![-2]]);
        assert_eq!(g.dual(0), &QCycle::new(vec![rat(1, 2)]));
        assert_eq!(g.group_order(), 2);
        assert_eq!(g.canonical_cycle(), &QCycle::zero(1));
        assert!(g.is_numerically_gorenstein());
        let h = g.class_of(g.dual(0)).unwrap();
        assert_eq!(g.order_of(&h), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(Graph::from_eulers(&[], &[]).unwrap_err(), GraphError::Empty);
        assert!(matches!(
            Graph::from_eulers(&[-2, -2, -2], &[(0, 1), (1, 0)]),
            Err(GraphError::NotATree(_))
        ));
        assert!(matches!(
            Graph::from_eulers(&[-2, -2, -2], &[(0, 1)]),
            Err(GraphError::NotATree(_))
        ));
        assert!(matches!(
            Graph::from_eulers(&[-2, -2, -2], &[(0, 1), (1, 1)]),
            Err(GraphError::NotATree(_))
        ));
        // -1 -1 chain: det(-M) = 0
        assert!(matches!(
            Graph::from_eulers(&[-1, -1], &[(0, 1)]),
            Err(GraphError::NotNegativeDefinite { size: 2, .. })
        ));
        assert!(matches!(
            Graph::from_eulers(&[1], &[]),
            Err(GraphError::NotNegativeDefinite { size: 1, .. })
        ));
        let dup = GraphInput {
            vertices: vec![VertexInput { id: 0, euler: -2 }, VertexInput { id: 0, euler: -2 }],
            edges: vec![[0, 1]],
            arrows: vec![],
            central: None,
        };
        assert_eq!(Graph::build(&dup).unwrap_err(), GraphError::DuplicateVertexId(0));
    }

    #[test]
    fn chi_h_rejects_fractional_argument() {
        let g = a1();
        let h = g.class_zero();
        let err = g
            .chi_h(&QCycle::new(vec![rat(1, 2)]), &h, &QCycle::zero(1))
            .unwrap_err();
        assert!(matches!(err, GraphError::NonIntegralArgument { vertex: 0, .. }));
    }

    #[test]
    fn class_of_rejects_non_dual_cycles() {
        let g = Graph::from_eulers(&[-2, -2], &[(0, 1)]).unwrap();
        // (E_0/2, E_0) = -1, (E_0/2, E_1) = 1/2
        let x = QCycle::new(vec![rat(1, 2), int(0)]);
        assert!(matches!(g.class_of(&x), Err(GraphError::NotInDualLattice { vertex: 1, .. })));
    }

    #[test]
    fn chi_fast_path_matches_pairing() {
        let g = Graph::from_eulers(&[-3, -2, -5, -2], &[(0, 1), (1, 2), (1, 3)]).unwrap();
        for y in [[0, 0, 0, 0], [1, 0, 0, 0], [2, 1, 0, 3], [-1, 4, 2, -2]] {
            let x = g.cycle_from_dual(&y);
            assert_eq!(g.chi_dual(&y), g.chi(&x));
            assert_eq!(g.dual_coords(&x).unwrap(), y.to_vec());
        }
    }
}
