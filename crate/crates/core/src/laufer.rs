//! Generalized Laufer computation sequences.
//!
//! Starting from `x_0 = l'`, while some `E_u` has `(x_i, E_u) > 0` set
//! `x_{i+1} = x_i + E_u`. The sequence stops at `s(l')`, the smallest
//! anti-nef cycle above `l'` in the same class of `H`. Started at `r_h` it
//! produces `s_h`; started at a single `E_v` it produces the minimal
//! (fundamental) cycle.
//!
//! Everything runs on dual coordinates: adding `E_u` lowers `y` by column
//! `u` of `M`, and the cycle is anti-nef once `y >= 0`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::cycle::QCycle;
use crate::graph::{ClassElt, Graph, GraphError};
use crate::group::ClassKey;
use crate::rational::{int, Rational};

pub const DEFAULT_ITER_CAP: u64 = 1_000_000;

/// Iteration cap for [`laufer_closure`] runs; `INVAR_ITER_CAP` overrides the
/// default. Sequences started at `r_h` or `E_v` end after a bounded number
/// of steps on any negative definite graph and ignore the cap.
pub fn iteration_cap() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("INVAR_ITER_CAP")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&c| c > 0)
            .unwrap_or(DEFAULT_ITER_CAP)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LauferError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no anti-nef cycle after {steps} steps; dual coordinates at stop: {dual_coords:?}")]
    NonTermination { steps: u64, dual_coords: Vec<i64> },
}

/// A recorded run of the algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputationSequence {
    start: QCycle,
    end: QCycle,
    added: Vec<usize>,
}

impl ComputationSequence {
    pub fn start(&self) -> &QCycle {
        &self.start
    }

    pub fn end(&self) -> &QCycle {
        &self.end
    }

    /// Vertices in the order their `E_u` were added.
    pub fn added(&self) -> &[usize] {
        &self.added
    }

    pub fn len(&self) -> usize {
        self.added.len()
    }

    pub fn is_empty(&self) -> bool {
        self.added.is_empty()
    }

    /// `(x_{i+1}, u_i)` for every step.
    pub fn steps(&self) -> impl Iterator<Item = (QCycle, usize)> + '_ {
        let mut cur = self.start.clone();
        self.added.iter().map(move |&u| {
            cur = &cur + &QCycle::basis(cur.len(), u);
            (cur.clone(), u)
        })
    }
}

/// Runs the sequence in dual coordinates, always adding the lowest vertex
/// id with positive pairing. Returns the number of steps.
pub(crate) fn close_dual_quiet(g: &Graph, y: &mut [i64], cap: u64) -> Result<u64, LauferError> {
    let mut steps = 0u64;
    let mut pending: BTreeSet<usize> = (0..y.len()).filter(|&v| y[v] < 0).collect();
    while let Some(&u) = pending.iter().next() {
        steps += 1;
        if steps > cap {
            return Err(non_termination(y, steps));
        }
        add_base(g, y, u, &mut pending);
    }
    Ok(steps)
}

fn close_dual_with(
    g: &Graph,
    y: &mut [i64],
    cap: u64,
    mut choose: impl FnMut(&BTreeSet<usize>) -> usize,
    added: &mut Vec<usize>,
) -> Result<(), LauferError> {
    let mut pending: BTreeSet<usize> = (0..y.len()).filter(|&v| y[v] < 0).collect();
    while !pending.is_empty() {
        if added.len() as u64 >= cap {
            return Err(non_termination(y, added.len() as u64));
        }
        let u = choose(&pending);
        debug_assert!(pending.contains(&u));
        add_base(g, y, u, &mut pending);
        added.push(u);
    }
    Ok(())
}

/// `x += E_u` in dual coordinates: `y_u += b_u`, `y_w -= 1` for neighbours.
fn add_base(g: &Graph, y: &mut [i64], u: usize, pending: &mut BTreeSet<usize>) {
    y[u] -= g.euler(u);
    if y[u] >= 0 {
        pending.remove(&u);
    }
    for &w in g.neighbors(u) {
        y[w] -= 1;
        if y[w] < 0 {
            pending.insert(w);
        }
    }
}

fn non_termination(y: &[i64], steps: u64) -> LauferError {
    LauferError::NonTermination {
        steps,
        dual_coords: y.to_vec(),
    }
}

/// `s(l')` together with the computation sequence that reached it.
pub fn laufer_closure(g: &Graph, start: &QCycle) -> Result<(QCycle, ComputationSequence), LauferError> {
    laufer_closure_by(g, start, |pending| *pending.iter().next().unwrap())
}

/// Like [`laufer_closure`], but `choose` picks which admissible vertex to
/// add at each step (it receives the set of vertices with positive pairing).
pub fn laufer_closure_by(
    g: &Graph,
    start: &QCycle,
    choose: impl FnMut(&BTreeSet<usize>) -> usize,
) -> Result<(QCycle, ComputationSequence), LauferError> {
    closure_capped(g, start, iteration_cap(), choose)
}

fn closure_capped(
    g: &Graph,
    start: &QCycle,
    cap: u64,
    choose: impl FnMut(&BTreeSet<usize>) -> usize,
) -> Result<(QCycle, ComputationSequence), LauferError> {
    let mut y = g.dual_coords(start)?;
    let mut added = Vec::new();
    close_dual_with(g, &mut y, cap, choose, &mut added)?;
    let mut counts = vec![0i64; g.num_vertices()];
    for &u in &added {
        counts[u] += 1;
    }
    let end = start + &QCycle::from_ints(&counts);
    let trace = ComputationSequence {
        start: start.clone(),
        end: end.clone(),
        added,
    };
    Ok((end, trace))
}

/// Dual coordinates of `s_h`.
pub fn minimal_class_dual(g: &Graph, h: &ClassElt) -> Vec<i64> {
    let num: Vec<i128> = g.rep_numerators(h.key()).into_iter().map(i128::from).collect();
    let mut y = g.dual_from_numerators(&num);
    close_dual_quiet(g, &mut y, u64::MAX).expect("negative definite graphs terminate");
    y
}

/// `s_h`, the unique minimal element of the Lipman cone in class `h`.
pub fn minimal_class_cycle(g: &Graph, h: &ClassElt) -> QCycle {
    g.cycle_from_dual(&minimal_class_dual(g, h))
}

/// `χ(r_h) - χ(s_h)`.
pub fn chi_drop(g: &Graph, h: &ClassElt) -> Rational {
    int(chi_drop_key(g, h.key()))
}

/// `χ(r_h) - χ(s_h)` without leaving machine integers. Adding `E_u` to a
/// cycle with dual coordinate `y_u` changes `χ` by `1 + y_u`.
pub fn chi_drop_key(g: &Graph, key: &ClassKey) -> i64 {
    let num: Vec<i128> = g.rep_numerators(key).into_iter().map(i128::from).collect();
    let mut y = g.dual_from_numerators(&num);
    let mut drop = 0i64;
    let mut pending: BTreeSet<usize> = (0..y.len()).filter(|&v| y[v] < 0).collect();
    while let Some(&u) = pending.iter().next() {
        drop -= 1 + y[u];
        add_base(g, &mut y, u, &mut pending);
    }
    drop
}

/// The minimal (fundamental) cycle: the least nonzero anti-nef integral cycle.
pub fn minimal_cycle(g: &Graph) -> QCycle {
    minimal_cycle_from(g, 0)
}

/// The minimal cycle computed by a sequence started at `E_v`.
pub fn minimal_cycle_from(g: &Graph, v: usize) -> QCycle {
    let n = g.num_vertices();
    let e_v = QCycle::basis(n, v);
    let (s, _) = closure_capped(g, &e_v, u64::MAX, |p| *p.iter().next().unwrap())
        .expect("negative definite graphs terminate");
    s
}

/// Artin's criterion: rational iff `χ(Z_min) = 1`.
pub fn is_rational(g: &Graph) -> bool {
    g.chi(&minimal_cycle(g)) == int(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn antinef_start_is_fixed() {
        let g = Graph::from_eulers(&[-2, -3], &[(0, 1)]).unwrap();
        let (s, trace) = laufer_closure(&g, g.dual(1)).unwrap();
        assert_eq!(&s, g.dual(1));
        assert!(trace.is_empty());
    }

    #[test]
    fn a1_minimal_cycle() {
        let g = Graph::from_eulers(&[-2], &[]).unwrap();
        assert_eq!(minimal_cycle(&g), QCycle::from_ints(&[1]));
        assert!(is_rational(&g));
        let h = g.class_of(g.dual(0)).unwrap();
        assert_eq!(minimal_class_cycle(&g, &h), QCycle::new(vec![rat(1, 2)]));
        assert_eq!(chi_drop(&g, &h), int(0));
    }

    #[test]
    fn chi_drop_matches_direct_evaluation() {
        let g = Graph::from_eulers(&[-2, -2, -4, -2, -4, -3, -3], &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (0, 6)]).unwrap();
        for k in g.classes() {
            let h = g.class_from_key(&k);
            let direct = g.chi(h.rep()) - g.chi(&minimal_class_cycle(&g, &h));
            assert_eq!(chi_drop(&g, &h), direct);
        }
    }

    #[test]
    fn e8_is_rational_and_a_cusp_like_graph_is_not() {
        // E8: chain of 7 with a -2 attached to the third vertex
        let e8 = Graph::from_eulers(
            &[-2; 8],
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)],
        )
        .unwrap();
        assert_eq!(e8.group_order(), 1);
        assert!(is_rational(&e8));
        assert_eq!(minimal_cycle(&e8), QCycle::from_ints(&[2, 4, 6, 5, 4, 3, 2, 3]));

        // central -1 with legs -2, -3, -7: the E8 singularity's minimal good
        // resolution has a -1 node; (-1; 2, 3, 7) is x^2+y^3+z^7, minimally elliptic
        let g = Graph::from_eulers(&[-1, -2, -3, -7], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_rational(&g));
    }

    #[test]
    fn trace_steps_end_at_result() {
        let g = Graph::from_eulers(&[-1, -2, -3, -7], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let start = QCycle::basis(4, 1);
        let (s, trace) = laufer_closure(&g, &start).unwrap();
        let last = trace.steps().last().unwrap().0;
        assert_eq!(last, s);
        for (x, u) in trace.steps() {
            assert!(x[u] > start[u]);
        }
        assert!(g.is_antinef(&s));
    }
}
