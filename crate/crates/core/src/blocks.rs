//! The block decomposition engine: case-specific block alphabets, sticking
//! rules, start/end policies, semi-blocks, special chains, pair counts, and
//! transfer-matrix counting for ladders and circular ladders.
//!
//! Counting is done with exact integer matrix powers of the block adjacency
//! matrix — never the `N(k−2)/4` shortcut, whose error oscillates +1/−2 with
//! period three. Chains are emitted in block-id lexicographic order so golden
//! files stay stable.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::game::Strategy;
use crate::index::{rungs_to_blocks, Parity};
use crate::topology::StrategyProfile;

/// Default cap on how many chains [`enumerate_chains`] will materialize.
pub const DEFAULT_CHAIN_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockError {
    /// Case 2 ladders with odd `n` have no published semi-block rules; only
    /// the oracle covers them.
    #[error("block counting for case 2 does not support odd n")]
    UnsupportedParity,
    #[error("{count} chains exceed the enumeration limit of {limit}")]
    SizeLimit { count: BigUint, limit: u64 },
    #[error("invalid chain at position {position}: {reason}")]
    InvalidChain { position: usize, reason: &'static str },
}

/// The two block systems worked out in the paper. Case 1 serves the
/// MINORITY_A regime (`x > y > x/2`), case 2 the LONE_A regime (`x/2 > y`);
/// the two B regimes are reached through the a↔b swap bijection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Case1,
    Case2,
}

impl Case {
    /// The representative regime this block alphabet was derived for.
    pub fn regime(self) -> crate::game::Regime {
        match self {
            Case::Case1 => crate::game::Regime::MinorityA,
            Case::Case2 => crate::game::Regime::LoneA,
        }
    }

    /// The engine case serving a regime, plus whether profiles must be
    /// a↔b-swapped to land in that regime.
    pub fn from_regime(regime: crate::game::Regime) -> (Case, bool) {
        use crate::game::Regime;
        match regime {
            Regime::MinorityA => (Case::Case1, false),
            Regime::MinorityB => (Case::Case1, true),
            Regime::LoneA => (Case::Case2, false),
            Regime::LoneB => (Case::Case2, true),
        }
    }
}

/// A 2×2 tile of strategies covering two adjacent rungs: `cells[0]` is the
/// top row (left, right), `cells[1]` the bottom row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub id: usize,
    pub cells: [[Strategy; 2]; 2],
}

impl Block {
    /// Column `c` as (top, bottom).
    fn column(&self, c: usize) -> [Strategy; 2] {
        [self.cells[0][c], self.cells[1][c]]
    }
}

/// A small set of block ids (the alphabets have at most 6 blocks).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSet(u8);

impl BlockSet {
    pub fn from_ids(ids: &[usize]) -> Self {
        let mut mask = 0u8;
        for &id in ids {
            debug_assert!(id < 8);
            mask |= 1 << id;
        }
        Self(mask)
    }

    pub fn contains(self, id: usize) -> bool {
        id < 8 && self.0 >> id & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..8).filter(move |&id| self.contains(id))
    }
}

/// The block alphabet of one case with its sticking rules and policies.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub case: Case,
    pub blocks: Vec<Block>,
    /// `left_adjacency[i][j]` is true iff block `i` may immediately precede
    /// block `j`.
    pub left_adjacency: Vec<Vec<bool>>,
    pub start_allowed: BlockSet,
    pub end_allowed_even_n: BlockSet,
    /// `None` for case 2 (odd `n` unsupported there).
    pub end_allowed_odd_n: Option<BlockSet>,
    /// Blocks participating in transfer-matrix counting; special blocks
    /// (case 1's block 4) sit past this index and are handled as fixed
    /// whole-ladder / whole-cycle solutions.
    counting_len: usize,
}

impl BlockSystem {
    /// Number of blocks in the counting alphabet (specials excluded).
    pub fn counting_len(&self) -> usize {
        self.counting_len
    }

    /// All counting blocks, as the unrestricted start/end policy.
    pub fn unrestricted(&self) -> BlockSet {
        BlockSet::from_ids(&(0..self.counting_len).collect::<Vec<_>>())
    }

    pub fn may_precede(&self, i: usize, j: usize) -> bool {
        self.left_adjacency[i][j]
    }

    /// The counting-alphabet adjacency as a 0/1 integer matrix.
    fn counting_matrix(&self) -> Vec<Vec<BigUint>> {
        (0..self.counting_len)
            .map(|i| {
                (0..self.counting_len)
                    .map(|j| {
                        if self.left_adjacency[i][j] {
                            BigUint::from(1u32)
                        } else {
                            BigUint::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

fn block(id: usize, top: [Strategy; 2], bottom: [Strategy; 2]) -> Block {
    Block {
        id,
        cells: [top, bottom],
    }
}

fn adjacency_from_predecessors(num_blocks: usize, preds: &[&[usize]]) -> Vec<Vec<bool>> {
    let mut adjacency = vec![vec![false; num_blocks]; num_blocks];
    for (j, list) in preds.iter().enumerate() {
        for &i in *list {
            adjacency[i][j] = true;
        }
    }
    adjacency
}

/// The exact block system of the given case, blocks carrying their 2×2 cells
/// so chains can be materialized into profiles.
pub fn block_system(case: Case) -> BlockSystem {
    use Strategy::{A, B};
    match case {
        Case::Case1 => BlockSystem {
            case,
            blocks: vec![
                block(0, [A, B], [B, A]),
                block(1, [B, A], [A, B]),
                block(2, [A, A], [B, B]),
                block(3, [B, B], [A, A]),
                block(4, [B, A], [B, A]),
            ],
            // 0,1,3 → 0 ; 0,1,2 → 1 ; 0,3 → 2 ; 1,2 → 3 ; 4 → 4
            left_adjacency: adjacency_from_predecessors(
                5,
                &[&[0, 1, 3], &[0, 1, 2], &[0, 3], &[1, 2], &[4]],
            ),
            start_allowed: BlockSet::from_ids(&[0, 1]),
            end_allowed_even_n: BlockSet::from_ids(&[0, 1]),
            end_allowed_odd_n: Some(BlockSet::from_ids(&[0, 1, 2, 3])),
            counting_len: 4,
        },
        Case::Case2 => BlockSystem {
            case,
            blocks: vec![
                block(0, [A, B], [B, A]),
                block(1, [A, B], [B, B]),
                block(2, [B, A], [A, B]),
                block(3, [B, B], [A, B]),
                block(4, [B, A], [B, B]),
                block(5, [B, B], [B, A]),
            ],
            // 0,3,5 → 0 ; 0,3,5 → 1 ; 1,2,4 → 2 ; 1,2,4 → 3 ; 0,5 → 4 ; 2,4 → 5
            left_adjacency: adjacency_from_predecessors(
                6,
                &[
                    &[0, 3, 5],
                    &[0, 3, 5],
                    &[1, 2, 4],
                    &[1, 2, 4],
                    &[0, 5],
                    &[2, 4],
                ],
            ),
            start_allowed: BlockSet::from_ids(&[0, 1, 2, 3]),
            end_allowed_even_n: BlockSet::from_ids(&[0, 2, 4, 5]),
            end_allowed_odd_n: None,
            counting_len: 6,
        },
    }
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let term = aik * &b[k][j];
                out[i][j] += term;
            }
        }
    }
    out
}

fn identity(n: usize) -> Vec<Vec<BigUint>> {
    let mut m = vec![vec![BigUint::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigUint::from(1u32);
    }
    m
}

fn mat_pow(base: &[Vec<BigUint>], mut exp: u64) -> Vec<Vec<BigUint>> {
    let mut result = identity(base.len());
    let mut acc = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = mat_mul(&result, &acc);
        }
        exp >>= 1;
        if exp > 0 {
            acc = mat_mul(&acc, &acc);
        }
    }
    result
}

/// Number of length-`k` chains whose first block is in `start` and last
/// block is in `end`: `u · A^(k−1) · v` over the counting alphabet.
pub fn chain_count(sys: &BlockSystem, k: u64, start: BlockSet, end: BlockSet) -> BigUint {
    assert!(k >= 1, "chains have at least one block");
    let powered = mat_pow(&sys.counting_matrix(), k - 1);
    let mut total = BigUint::zero();
    for i in start.iter().filter(|&i| i < sys.counting_len) {
        for j in end.iter().filter(|&j| j < sys.counting_len) {
            total += &powered[i][j];
        }
    }
    total
}

/// The length-1..=`k_max` chain-count series for fixed policies, computed
/// incrementally (one vector-matrix product per step).
pub fn chain_count_series(
    sys: &BlockSystem,
    k_max: u64,
    start: BlockSet,
    end: BlockSet,
) -> Vec<BigUint> {
    let matrix = sys.counting_matrix();
    let len = sys.counting_len;
    // row vector of per-end-block counts for chains starting in `start`
    let mut row: Vec<BigUint> = (0..len)
        .map(|j| {
            if start.contains(j) {
                BigUint::from(1u32)
            } else {
                BigUint::zero()
            }
        })
        .collect();
    let mut series = Vec::with_capacity(k_max as usize);
    for _ in 0..k_max {
        let total = (0..len)
            .filter(|&j| end.contains(j))
            .fold(BigUint::zero(), |acc, j| acc + &row[j]);
        series.push(total);
        let mut next = vec![BigUint::zero(); len];
        for (i, value) in row.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            for (j, cell) in next.iter_mut().enumerate() {
                if matrix[i][j].is_zero() {
                    continue;
                }
                *cell += value;
            }
        }
        row = next;
    }
    series
}

/// Exact ladder equilibrium count by block chains.
///
/// Case 1 even `n = 2k` uses the even end policy; odd `n = 2k + 1` uses the
/// odd end policy plus one fixed block-4 chain. Case 2 supports even `n`
/// only.
pub fn ladder_count_blocks(case: Case, n: u64) -> Result<BigUint, BlockError> {
    assert!(n >= 2, "ladders have at least two rungs");
    let sys = block_system(case);
    let (k, parity) = rungs_to_blocks(n);
    match (case, parity) {
        (Case::Case1, Parity::Even) => {
            Ok(chain_count(&sys, k, sys.start_allowed, sys.end_allowed_even_n))
        }
        (Case::Case1, Parity::Odd) => {
            let chains = chain_count(
                &sys,
                k,
                sys.start_allowed,
                sys.end_allowed_odd_n.expect("case 1 has an odd policy"),
            );
            Ok(chains + 1u32)
        }
        (Case::Case2, Parity::Even) => {
            Ok(chain_count(&sys, k, sys.start_allowed, sys.end_allowed_even_n))
        }
        (Case::Case2, Parity::Odd) => Err(BlockError::UnsupportedParity),
    }
}

/// Exact circular-ladder equilibrium count for `4k` players (`n = 2k`).
///
/// A cyclic chain is valid iff consecutive blocks may stick and the last
/// block may precede the first, which is `trace(A^k)` over the counting
/// alphabet; case 1 adds the block-4 cycle and its a↔b reverse.
pub fn circular_count_blocks(case: Case, k: u64) -> BigUint {
    assert!(k >= 2, "circular counting needs at least two blocks");
    let sys = block_system(case);
    let powered = mat_pow(&sys.counting_matrix(), k);
    let mut total = BigUint::zero();
    for i in 0..sys.counting_len {
        total += &powered[i][i];
    }
    match case {
        Case::Case1 => total + 2u32,
        Case::Case2 => total,
    }
}

/// Unrestricted chain totals, per-start and per-end marginals, and the full
/// pair matrix `N_{j..m}(k)`, all exact.
#[derive(Clone, Debug)]
pub struct ChainCounts {
    pub k: u64,
    pub total: BigUint,
    /// `per_end[j]` is `N_{..j}(k)`.
    pub per_end: Vec<BigUint>,
    /// `per_start[j]` is `N_{j..}(k)`.
    pub per_start: Vec<BigUint>,
    /// `pairs[j][m]` is `N_{j..m}(k)`.
    pub pairs: Vec<Vec<BigUint>>,
}

/// Exact `N_{j..m}(k)` for all counting-block pairs, with marginals.
pub fn pair_counts(sys: &BlockSystem, k: u64) -> ChainCounts {
    assert!(k >= 1);
    let pairs = mat_pow(&sys.counting_matrix(), k - 1);
    let len = sys.counting_len;
    let per_start: Vec<BigUint> = (0..len)
        .map(|j| pairs[j].iter().fold(BigUint::zero(), |acc, v| acc + v))
        .collect();
    let per_end: Vec<BigUint> = (0..len)
        .map(|m| (0..len).fold(BigUint::zero(), |acc, j| acc + &pairs[j][m]))
        .collect();
    let total = per_start.iter().fold(BigUint::zero(), |acc, v| acc + v);
    ChainCounts {
        k,
        total,
        per_end,
        per_start,
        pairs,
    }
}

/// All valid chains of length `k` under the given policies, lexicographic by
/// block id. Errors with [`BlockError::SizeLimit`] before materializing more
/// than `DEFAULT_CHAIN_LIMIT` chains.
pub fn enumerate_chains(
    sys: &BlockSystem,
    k: u64,
    start: BlockSet,
    end: BlockSet,
) -> Result<Vec<Vec<usize>>, BlockError> {
    enumerate_chains_with_limit(sys, k, start, end, DEFAULT_CHAIN_LIMIT)
}

pub fn enumerate_chains_with_limit(
    sys: &BlockSystem,
    k: u64,
    start: BlockSet,
    end: BlockSet,
    limit: u64,
) -> Result<Vec<Vec<usize>>, BlockError> {
    let count = chain_count(sys, k, start, end);
    if count > BigUint::from(limit) {
        return Err(BlockError::SizeLimit { count, limit });
    }
    let mut chains = Vec::new();
    let mut prefix = Vec::with_capacity(k as usize);
    descend(sys, k as usize, start, end, &mut prefix, &mut chains);
    Ok(chains)
}

fn descend(
    sys: &BlockSystem,
    k: usize,
    start: BlockSet,
    end: BlockSet,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() == k {
        if end.contains(*prefix.last().expect("k >= 1")) {
            out.push(prefix.clone());
        }
        return;
    }
    for next in 0..sys.counting_len {
        let allowed = match prefix.last() {
            None => start.contains(next),
            Some(&prev) => sys.may_precede(prev, next),
        };
        if allowed {
            prefix.push(next);
            descend(sys, k, start, end, prefix, out);
            prefix.pop();
        }
    }
}

/// All valid cyclic chains of length `k` over the counting alphabet
/// (consecutive sticking plus last-may-precede-first), lexicographic.
pub fn enumerate_cyclic_chains(sys: &BlockSystem, k: u64) -> Result<Vec<Vec<usize>>, BlockError> {
    let unrestricted = sys.unrestricted();
    // Every cyclic chain is in particular an unrestricted chain.
    let bound = chain_count(sys, k, unrestricted, unrestricted);
    if bound > BigUint::from(DEFAULT_CHAIN_LIMIT) {
        return Err(BlockError::SizeLimit {
            count: bound,
            limit: DEFAULT_CHAIN_LIMIT,
        });
    }
    let all = enumerate_chains_with_limit(sys, k, unrestricted, unrestricted, DEFAULT_CHAIN_LIMIT)?;
    Ok(all
        .into_iter()
        .filter(|chain| sys.may_precede(*chain.last().unwrap(), chain[0]))
        .collect())
}

fn validate_chain(sys: &BlockSystem, chain: &[usize]) -> Result<(), BlockError> {
    if chain.is_empty() {
        return Err(BlockError::InvalidChain {
            position: 0,
            reason: "empty chain",
        });
    }
    for (position, &id) in chain.iter().enumerate() {
        if id >= sys.blocks.len() {
            return Err(BlockError::InvalidChain {
                position,
                reason: "unknown block id",
            });
        }
    }
    for position in 1..chain.len() {
        if !sys.may_precede(chain[position - 1], chain[position]) {
            return Err(BlockError::InvalidChain {
                position,
                reason: "blocks may not stick",
            });
        }
    }
    Ok(())
}

/// Materializes a chain into the canonical profile by concatenating block
/// columns left to right.
///
/// With `append_semi` (odd `n` ladders) the trailing two-player column is
/// the elementwise a↔b swap of the final block's last column; that single
/// rule reproduces every decomposition in the paper's odd-ladder figure,
/// including the fixed block-4 chain whose semi-block comes out as `b|b`.
pub fn chain_to_profile(
    sys: &BlockSystem,
    chain: &[usize],
    append_semi: bool,
) -> Result<StrategyProfile, BlockError> {
    validate_chain(sys, chain)?;
    let rungs = 2 * chain.len() + usize::from(append_semi);
    let mut top = Vec::with_capacity(rungs);
    let mut bottom = Vec::with_capacity(rungs);
    for &id in chain {
        for c in 0..2 {
            let [t, b] = sys.blocks[id].column(c);
            top.push(t);
            bottom.push(b);
        }
    }
    if append_semi {
        let last = sys.blocks[*chain.last().unwrap()].column(1);
        top.push(last[0].flipped());
        bottom.push(last[1].flipped());
    }
    top.extend(bottom);
    Ok(StrategyProfile::new(top))
}

/// Materializes a cyclic chain (wrap validity included in the check).
pub fn cyclic_chain_to_profile(
    sys: &BlockSystem,
    chain: &[usize],
) -> Result<StrategyProfile, BlockError> {
    validate_chain(sys, chain)?;
    if !sys.may_precede(*chain.last().unwrap(), chain[0]) {
        return Err(BlockError::InvalidChain {
            position: chain.len() - 1,
            reason: "last block may not precede the first",
        });
    }
    chain_to_profile(sys, chain, false)
}

/// The fixed whole-cycle solutions added on top of the transfer-matrix count
/// for circular ladders: case 1 contributes the block-4 cycle and its a↔b
/// reverse (which has no decomposition in the case's alphabet), case 2 none.
pub fn circular_special_profiles(
    sys: &BlockSystem,
    k: u64,
) -> Vec<(StrategyProfile, Option<String>)> {
    match sys.case {
        Case::Case1 => {
            let chain = vec![4usize; k as usize];
            let profile = chain_to_profile(sys, &chain, false).expect("4 sticks to itself");
            let reversed = profile.swapped();
            vec![
                (profile, Some(chain_to_string(&chain, false))),
                (reversed, None),
            ]
        }
        Case::Case2 => Vec::new(),
    }
}

/// The fixed odd-`n` whole-ladder solution (case 1's block-4 chain with its
/// `b|b` semi-block), alongside the `+1` in [`ladder_count_blocks`].
pub fn ladder_odd_special_profile(sys: &BlockSystem, k: u64) -> Option<(StrategyProfile, String)> {
    match sys.case {
        Case::Case1 => {
            let chain = vec![4usize; k as usize];
            let profile = chain_to_profile(sys, &chain, true).expect("4 sticks to itself");
            Some((profile, chain_to_string(&chain, true)))
        }
        Case::Case2 => None,
    }
}

/// Chain text form: block ids joined without separator, `+S` marking a
/// semi-block (`"021"`, `"01+S"`).
pub fn chain_to_string(chain: &[usize], semi: bool) -> String {
    let mut text = String::with_capacity(chain.len() + 2);
    for &id in chain {
        let _ = write!(text, "{id}");
    }
    if semi {
        text.push_str("+S");
    }
    text
}

/// True iff every consecutive triple satisfies `N(k) = 3N(k−1) − N(k−2)`
/// exactly.
pub fn recurrence_check(sequence: &[BigUint]) -> bool {
    sequence
        .windows(3)
        .all(|w| BigUint::from(3u32) * &w[1] == &w[2] + &w[0])
}
