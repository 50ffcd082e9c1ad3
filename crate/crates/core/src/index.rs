//! Index conversions between players `2n`, rungs `n`, and blocks `k`.
//!
//! Every module goes through these routines so the `2n = 4k` (even `n`) and
//! `2n = 4k + 2` (odd `n`) conventions cannot drift apart.

/// Parity of the rung count `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Splits a rung count `n` into full blocks `k` plus parity.
///
/// Even `n = 2k` covers the ladder with `k` four-player blocks; odd
/// `n = 2k + 1` needs `k` blocks and a trailing two-player semi-block.
pub fn rungs_to_blocks(n: u64) -> (u64, Parity) {
    if n % 2 == 0 {
        (n / 2, Parity::Even)
    } else {
        (n / 2, Parity::Odd)
    }
}

/// Inverse of [`rungs_to_blocks`].
pub fn blocks_to_rungs(k: u64, parity: Parity) -> u64 {
    match parity {
        Parity::Even => 2 * k,
        Parity::Odd => 2 * k + 1,
    }
}

/// Converts a player count `2n` to the rung count `n`; `None` if odd.
pub fn players_to_rungs(players: u64) -> Option<u64> {
    (players % 2 == 0).then_some(players / 2)
}
