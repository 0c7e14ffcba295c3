//! The discriminant group `H = L'/L` in Smith normal form.
//!
//! Elements of `L'` are handled through their coordinates in the `E*_v`
//! basis (integer vectors `y` with `l' = Σ y_v E*_v`). In these coordinates
//! `L` is the column span of `M`, so `H = Z^n / M Z^n`. With `U M V`
//! diagonal, `y ↦ (U y) mod d_i` is an isomorphism onto `⊕ Z/d_i`; the
//! tuple of residues is the [`ClassKey`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Canonical residues of a class of `L'/L` in the Smith basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassKey(pub Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Invariant factors `d_i > 1`, each dividing the next.
    factors: Vec<i64>,
    /// Rows of `U` belonging to the nontrivial factors, reduced mod `d_i`.
    rows: Vec<Vec<i64>>,
    /// `E*`-coordinates of a representative of each Smith generator.
    gens: Vec<Vec<BigInt>>,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("intersection matrix is singular")]
    Singular,
    #[error("invariant factor {0} does not fit in 64 bits")]
    TooLarge(String),
}

impl DiscriminantGroup {
    pub fn from_matrix(m: &[Vec<i64>]) -> Result<Self, GroupError> {
        let n = m.len();
        let mut a: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut u = identity(n);
        let mut uinv = identity(n);

        for t in 0..n {
            loop {
                let Some((p, q)) = smallest_nonzero(&a, t) else {
                    return Err(GroupError::Singular);
                };
                a.swap(t, p);
                u.swap(t, p);
                swap_cols(&mut uinv, t, p);
                swap_cols(&mut a, t, q);

                let mut clean = true;
                for i in t + 1..n {
                    if a[i][t].is_zero() {
                        continue;
                    }
                    let k = &a[i][t] / &a[t][t];
                    add_row(&mut a, i, t, &-&k);
                    add_row(&mut u, i, t, &-&k);
                    add_col(&mut uinv, t, i, &k);
                    clean &= a[i][t].is_zero();
                }
                for j in t + 1..n {
                    if a[t][j].is_zero() {
                        continue;
                    }
                    let k = &a[t][j] / &a[t][t];
                    add_col(&mut a, j, t, &-&k);
                    clean &= a[t][j].is_zero();
                }
                if !clean {
                    continue;
                }
                // d_t must divide the rest of the block.
                let bad = (t + 1..n).find(|&i| {
                    (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero())
                });
                match bad {
                    Some(i) => {
                        add_row(&mut a, t, i, &BigInt::one());
                        add_row(&mut u, t, i, &BigInt::one());
                        add_col(&mut uinv, i, t, &-BigInt::one());
                    }
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                a[t] = a[t].iter().map(|x| -x).collect();
                u[t] = u[t].iter().map(|x| -x).collect();
                for row in uinv.iter_mut() {
                    row[t] = -&row[t];
                }
            }
        }

        let mut factors = Vec::new();
        let mut rows = Vec::new();
        let mut gens = Vec::new();
        for t in 0..n {
            let d = a[t][t].clone();
            if d.is_one() {
                continue;
            }
            let di = d
                .to_i64()
                .ok_or_else(|| GroupError::TooLarge(d.to_string()))?;
            factors.push(di);
            rows.push(
                u[t].iter()
                    .map(|x| x.mod_floor(&d).to_i64().expect("reduced below d"))
                    .collect(),
            );
            gens.push(uinv.iter().map(|row| row[t].clone()).collect());
        }
        Ok(DiscriminantGroup {
            factors,
            rows,
            gens,
            dim: n,
        })
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn zero(&self) -> ClassKey {
        ClassKey(vec![0; self.factors.len()])
    }

    /// Class of the element with `E*`-coordinates `y`.
    pub fn key(&self, y: &[i64]) -> ClassKey {
        ClassKey(
            self.rows
                .iter()
                .zip(&self.factors)
                .map(|(row, &d)| {
                    let s: i128 = row
                        .iter()
                        .zip(y)
                        .map(|(&r, &x)| r as i128 * x as i128)
                        .sum();
                    s.rem_euclid(d as i128) as i64
                })
                .collect(),
        )
    }

    /// Class of `Σ_j coeff_j · E*_{v_j}` given as sparse `(vertex, coeff)` pairs.
    pub fn key_sparse(&self, terms: &[(usize, i64)]) -> ClassKey {
        ClassKey(
            self.rows
                .iter()
                .zip(&self.factors)
                .map(|(row, &d)| {
                    let s: i128 = terms
                        .iter()
                        .map(|&(v, c)| row[v] as i128 * c as i128)
                        .sum();
                    s.rem_euclid(d as i128) as i64
                })
                .collect(),
        )
    }

    /// Images of the base vectors `E*_v` as keys, one per vertex.
    pub fn basis_keys(&self, n: usize) -> Vec<ClassKey> {
        (0..n).map(|v| self.key_sparse(&[(v, 1)])).collect()
    }

    pub fn add(&self, a: &ClassKey, b: &ClassKey) -> ClassKey {
        ClassKey(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y).rem_euclid(*d))
                .collect(),
        )
    }

    pub fn neg(&self, a: &ClassKey) -> ClassKey {
        ClassKey(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, d)| (-x).rem_euclid(*d))
                .collect(),
        )
    }

    pub fn scale(&self, a: &ClassKey, k: i64) -> ClassKey {
        ClassKey(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, d)| ((*x as i128 * k as i128).rem_euclid(*d as i128)) as i64)
                .collect(),
        )
    }

    /// Order of an element: lcm over components of `d_i / gcd(x_i, d_i)`.
    pub fn order_of(&self, a: &ClassKey) -> u64 {
        a.0.iter()
            .zip(&self.factors)
            .fold(1u64, |acc, (x, d)| acc.lcm(&((d / x.gcd(d)) as u64)))
    }

    /// `E*`-coordinates of some representative of the class (unreduced).
    pub fn representative(&self, key: &ClassKey) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.dim];
        for (c, g) in key.0.iter().zip(&self.gens) {
            for (yv, gv) in y.iter_mut().zip(g) {
                *yv += gv * c;
            }
        }
        y
    }

    /// Every class, in mixed-radix order with the first factor varying slowest.
    pub fn elements(&self) -> impl Iterator<Item = ClassKey> + '_ {
        (0..self.order() as usize).map(|i| self.key_at(i))
    }

    /// Position of `key` in [`elements`](Self::elements).
    pub fn index_of(&self, key: &ClassKey) -> usize {
        key.0
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn key_at(&self, mut idx: usize) -> ClassKey {
        let mut digits = vec![0i64; self.factors.len()];
        for (slot, &d) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as usize) as i64;
            idx /= d as usize;
        }
        ClassKey(digits)
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if a[i][j].is_zero() {
                continue;
            }
            if best.map_or(true, |(p, q)| a[i][j].abs() < a[p][q].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `row_dst += k · row_src`.
fn add_row(a: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    let src_row = a[src].clone();
    for (x, s) in a[dst].iter_mut().zip(&src_row) {
        *x += s * k;
    }
}

/// `col_dst += k · col_src`.
fn add_col(a: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for row in a.iter_mut() {
        let s = row[src].clone();
        row[dst] += s * k;
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Vec<Vec<i64>> {
        vec![vec![-2]]
    }

    /// D4 intersection matrix: H = Z/2 ⊕ Z/2.
    fn d4() -> Vec<Vec<i64>> {
        vec![
            vec![-2, 1, 1, 1],
            vec![1, -2, 0, 0],
            vec![1, 0, -2, 0],
            vec![1, 0, 0, -2],
        ]
    }

    #[test]
    fn a1_is_z2() {
        let g = DiscriminantGroup::from_matrix(&a1()).unwrap();
        assert_eq!(g.factors(), &[2]);
        assert_eq!(g.key(&[1]), ClassKey(vec![1]));
        assert_eq!(g.key(&[2]), g.zero());
    }

    #[test]
    fn d4_is_klein_four() {
        let g = DiscriminantGroup::from_matrix(&d4()).unwrap();
        assert_eq!(g.factors(), &[2, 2]);
        assert_eq!(g.elements().count(), 4);
        // columns of M are zero in H
        let m = d4();
        for j in 0..4 {
            let col: Vec<i64> = m.iter().map(|row| row[j]).collect();
            assert_eq!(g.key(&col), g.zero());
        }
    }

    #[test]
    fn representatives_round_trip() {
        let m = vec![
            vec![-3, 1, 0],
            vec![1, -2, 1],
            vec![0, 1, -5],
        ];
        let g = DiscriminantGroup::from_matrix(&m).unwrap();
        assert_eq!(g.order(), 3 * 2 * 5 - 5 - 3);
        for k in g.elements() {
            let y: Vec<i64> = g
                .representative(&k)
                .iter()
                .map(|x| x.to_i64().unwrap())
                .collect();
            assert_eq!(g.key(&y), k);
            assert_eq!(g.scale(&k, g.order_of(&k) as i64), g.zero());
            assert_eq!(g.key_at(g.index_of(&k)), k);
        }
    }
}
