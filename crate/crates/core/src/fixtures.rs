//! Reference singularities used by the tests and the CLI self-test.

use crate::graph::GraphInput;
use crate::seifert::SeifertData;

/// Embedded resolution of `x⁴ - y⁶ + z⁵` with the curve arrow on `E_6`.
///
/// Vertex `i` is `E_{i+1}`. Central vertex `E_3` (id 2); legs `E_2 E_1`,
/// `E_4`, `E_5 E_6`, `E_7 E_8`. The two `(5,2)` legs are interchangeable.
pub fn brieskorn_4_6_5() -> GraphInput {
    GraphInput::new(
        &[-2, -2, -2, -2, -3, -2, -3, -2],
        &[(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (2, 6), (6, 7)],
    )
    .with_arrows(&[5])
    .with_central(2)
}

pub fn brieskorn_4_6_5_seifert() -> SeifertData {
    SeifertData::new(2, &[(2, 1), (3, 2), (5, 2), (5, 2)]).expect("valid")
}

/// Star with two `[3]` legs and two `[2, 4]` legs; vertex `i` is `E_i`.
pub fn doubled_graph() -> GraphInput {
    GraphInput::new(
        &[-2, -2, -4, -2, -4, -3, -3],
        &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (0, 6)],
    )
    .with_central(0)
}

pub fn doubled_graph_seifert() -> SeifertData {
    SeifertData::new(2, &[(3, 1), (3, 1), (7, 4), (7, 4)]).expect("valid")
}

/// `(-2; 3×(3,1))`: symmetric semigroup `⟨2, 3⟩`, not numerically Gorenstein.
pub fn three_thirds() -> SeifertData {
    SeifertData::new(2, &[(3, 1), (3, 1), (3, 1)]).expect("valid")
}

/// `(-2; 2×(2,1), 2×(3,1))`: symmetric although `[Z_K + E*_0] != 0`.
pub fn two_halves_two_thirds() -> SeifertData {
    SeifertData::new(2, &[(2, 1), (2, 1), (3, 1), (3, 1)]).expect("valid")
}

/// `(-2; 2×(2,1), 2×(3,1), 2×(7,1), (84,1))`: numerically Gorenstein, not symmetric.
pub fn non_symmetric() -> SeifertData {
    SeifertData::new(
        2,
        &[(2, 1), (2, 1), (3, 1), (3, 1), (7, 1), (7, 1), (84, 1)],
    )
    .expect("valid")
}

/// A single `-2` curve.
pub fn a1() -> GraphInput {
    GraphInput::new(&[-2], &[])
}

/// `(-1; (3,1), (7,4))`: rational, semigroup `⟨3, 5, 7⟩`.
pub fn rational_357() -> SeifertData {
    SeifertData::new(1, &[(3, 1), (7, 4)]).expect("valid")
}
