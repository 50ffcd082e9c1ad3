//! Ground-truth brute-force enumeration of pure Nash equilibria over all
//! `2^(2n)` strategy profiles.
//!
//! Payoff comparisons are folded into per-player response tables built once
//! with exact rational arithmetic; the scan itself is pure bit work. Profiles
//! are encoded as `2n`-bit integers whose ascending order is the
//! lexicographic order of the canonical profile string, so splitting the
//! range across workers and concatenating the partial results is
//! deterministic regardless of the parallel schedule.

use std::cmp::Ordering;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::game::{PayoffParams, Rational, Strategy};
use crate::topology::{EdgeClass, GraphKind, LadderTopology, StrategyProfile};

/// Default cap on the player count `2n` (~67M profiles).
pub const DEFAULT_PLAYER_LIMIT: usize = 26;

/// Profiles per work unit; fixed so the chunking (and hence the merged
/// output) does not depend on the number of threads.
const CHUNK_BITS: u32 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{players} players exceed the configured limit of {limit}")]
    SizeLimit { players: usize, limit: usize },
}

/// Uniform payoffs, or one payoff matrix per edge class for the
/// heterogeneous three-games variant.
#[derive(Clone, Debug)]
pub enum PayoffAssignment {
    Uniform(PayoffParams),
    PerEdgeClass {
        rung: PayoffParams,
        top_rail: PayoffParams,
        bottom_rail: PayoffParams,
    },
}

impl PayoffAssignment {
    fn for_class(&self, class: EdgeClass) -> &PayoffParams {
        match self {
            PayoffAssignment::Uniform(params) => params,
            PayoffAssignment::PerEdgeClass {
                rung,
                top_rail,
                bottom_rail,
            } => match class {
                EdgeClass::Rung => rung,
                EdgeClass::TopRail => top_rail,
                EdgeClass::BottomRail => bottom_rail,
            },
        }
    }
}

/// The sorted equilibrium profiles of one topology/payoff pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumSet {
    pub kind: GraphKind,
    pub n: usize,
    /// Strictly sorted (a < b) in canonical string order.
    pub profiles: Vec<StrategyProfile>,
    pub count: BigUint,
}

/// Per-player strict best responses, indexed by the neighbor strategy
/// combination. `None` marks an exact payoff tie: neither strategy strictly
/// maximizes, so any profile reaching that entry is not an equilibrium.
struct ResponseTables {
    players: usize,
    /// `tables[i][combo]` where bit `b` of `combo` is 1 iff neighbor `b` (in
    /// canonical adjacency order) plays `b`.
    tables: Vec<Vec<Option<Strategy>>>,
    /// Bit shifts of each player's neighbors in the packed profile.
    neighbor_shifts: Vec<Vec<u32>>,
}

impl ResponseTables {
    fn build(topology: &LadderTopology, payoffs: &PayoffAssignment) -> Self {
        let players = topology.players();
        let mut tables = Vec::with_capacity(players);
        let mut neighbor_shifts = Vec::with_capacity(players);
        for player in 0..players {
            let neighbors = topology.neighbors(player);
            let degree = neighbors.len();
            let mut table = Vec::with_capacity(1 << degree);
            for combo in 0u32..1 << degree {
                let mut total_a = Rational::from(num_bigint::BigInt::from(0));
                let mut total_b = total_a.clone();
                for (bit, &(_, class)) in neighbors.iter().enumerate() {
                    let theirs = if combo >> bit & 1 == 1 {
                        Strategy::B
                    } else {
                        Strategy::A
                    };
                    let params = payoffs.for_class(class);
                    total_a += params.edge_payoff(Strategy::A, theirs);
                    total_b += params.edge_payoff(Strategy::B, theirs);
                }
                table.push(match total_a.cmp(&total_b) {
                    Ordering::Greater => Some(Strategy::A),
                    Ordering::Less => Some(Strategy::B),
                    Ordering::Equal => None,
                });
            }
            tables.push(table);
            neighbor_shifts.push(
                neighbors
                    .iter()
                    .map(|&(other, _)| (players - 1 - other) as u32)
                    .collect(),
            );
        }
        Self {
            players,
            tables,
            neighbor_shifts,
        }
    }

    #[inline]
    fn is_equilibrium_bits(&self, bits: u64) -> bool {
        for player in 0..self.players {
            let shifts = &self.neighbor_shifts[player];
            let mut combo = 0usize;
            for (bit, &shift) in shifts.iter().enumerate() {
                combo |= ((bits >> shift & 1) as usize) << bit;
            }
            let played = if bits >> (self.players - 1 - player) & 1 == 1 {
                Strategy::B
            } else {
                Strategy::A
            };
            if self.tables[player][combo] != Some(played) {
                return false;
            }
        }
        true
    }
}

/// True iff every player's chosen strategy strictly maximizes their mean
/// per-edge payoff against the fixed neighbor strategies.
///
/// The profile length must match the topology.
pub fn is_equilibrium(
    topology: &LadderTopology,
    payoffs: &PayoffAssignment,
    profile: &StrategyProfile,
) -> bool {
    assert_eq!(
        profile.players(),
        topology.players(),
        "profile length must match the topology"
    );
    let tables = ResponseTables::build(topology, payoffs);
    tables.is_equilibrium_bits(profile.to_bits())
}

fn check_limit(topology: &LadderTopology, limit: usize) -> Result<(), OracleError> {
    let players = topology.players();
    if players > limit || players > 62 {
        return Err(OracleError::SizeLimit {
            players,
            limit: limit.min(62),
        });
    }
    Ok(())
}

fn scan<T: Send>(
    tables: &ResponseTables,
    per_chunk: impl Fn(u64, u64, &ResponseTables) -> T + Sync,
) -> Vec<T> {
    let total: u64 = 1 << tables.players;
    let chunk = 1u64 << CHUNK_BITS.min(tables.players as u32);
    let chunks = total / chunk;
    (0..chunks)
        .into_par_iter()
        .map(|c| per_chunk(c * chunk, (c + 1) * chunk, tables))
        .collect()
}

/// Exactly the profiles passing [`is_equilibrium`], sorted; deterministic
/// regardless of the parallel split.
pub fn enumerate_equilibria(
    topology: &LadderTopology,
    payoffs: &PayoffAssignment,
) -> Result<EquilibriumSet, OracleError> {
    enumerate_equilibria_with_limit(topology, payoffs, DEFAULT_PLAYER_LIMIT)
}

pub fn enumerate_equilibria_with_limit(
    topology: &LadderTopology,
    payoffs: &PayoffAssignment,
    limit: usize,
) -> Result<EquilibriumSet, OracleError> {
    check_limit(topology, limit)?;
    let tables = ResponseTables::build(topology, payoffs);
    let players = topology.players();
    let hits = scan(&tables, |lo, hi, tables| {
        (lo..hi)
            .filter(|&bits| tables.is_equilibrium_bits(bits))
            .collect::<Vec<u64>>()
    });
    let profiles: Vec<StrategyProfile> = hits
        .into_iter()
        .flatten()
        .map(|bits| StrategyProfile::from_bits(bits, players))
        .collect();
    Ok(EquilibriumSet {
        kind: topology.kind(),
        n: topology.n(),
        count: BigUint::from(profiles.len()),
        profiles,
    })
}

/// Equilibrium count without storing profiles; the profile space is
/// partitioned and the partial counts summed.
pub fn count_equilibria(
    topology: &LadderTopology,
    payoffs: &PayoffAssignment,
) -> Result<BigUint, OracleError> {
    count_equilibria_with_limit(topology, payoffs, DEFAULT_PLAYER_LIMIT)
}

pub fn count_equilibria_with_limit(
    topology: &LadderTopology,
    payoffs: &PayoffAssignment,
    limit: usize,
) -> Result<BigUint, OracleError> {
    check_limit(topology, limit)?;
    let tables = ResponseTables::build(topology, payoffs);
    let partials = scan(&tables, |lo, hi, tables| {
        (lo..hi).filter(|&bits| tables.is_equilibrium_bits(bits)).count() as u64
    });
    Ok(BigUint::from(partials.into_iter().sum::<u64>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{best_response, reduce, regime_of};

    fn minority_a() -> PayoffAssignment {
        PayoffAssignment::Uniform(PayoffParams::from_ints(0, 2, 3, 0).unwrap())
    }

    fn lone_a() -> PayoffAssignment {
        PayoffAssignment::Uniform(PayoffParams::from_ints(0, 1, 3, 0).unwrap())
    }

    fn ladder(n: usize) -> LadderTopology {
        LadderTopology::new(GraphKind::Ladder, n).unwrap()
    }

    fn circular(n: usize) -> LadderTopology {
        LadderTopology::new(GraphKind::Circular, n).unwrap()
    }

    #[test]
    fn is_equilibrium_examples() {
        let t = ladder(2);
        let pay = minority_a();
        assert!(is_equilibrium(&t, &pay, &"ab|ba".parse().unwrap()));
        assert!(!is_equilibrium(&t, &pay, &"aa|aa".parse().unwrap()));

        let t = ladder(6);
        assert!(is_equilibrium(&t, &pay, &"abaaba|babbab".parse().unwrap()));
    }

    #[test]
    fn enumerate_two_rungs() {
        let set = enumerate_equilibria(&ladder(2), &minority_a()).unwrap();
        let strings: Vec<String> = set.profiles.iter().map(|p| p.to_string()).collect();
        assert_eq!(strings, vec!["ab|ba", "ba|ab"]);
        assert_eq!(set.count, BigUint::from(2u32));
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count_equilibria(&ladder(5), &minority_a()).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            count_equilibria(&ladder(6), &minority_a()).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            count_equilibria(&ladder(8), &minority_a()).unwrap(),
            BigUint::from(26u32)
        );
        assert_eq!(
            count_equilibria(&ladder(4), &lone_a()).unwrap(),
            BigUint::from(6u32)
        );
    }

    #[test]
    fn size_limit_enforced() {
        let t = ladder(8);
        assert_eq!(
            count_equilibria_with_limit(&t, &minority_a(), 14),
            Err(OracleError::SizeLimit {
                players: 16,
                limit: 14
            })
        );
    }

    #[test]
    fn profiles_are_sorted_strictly() {
        let set = enumerate_equilibria(&circular(4), &minority_a()).unwrap();
        assert!(set.profiles.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(BigUint::from(set.profiles.len()), set.count);
    }

    #[test]
    fn deviation_check() {
        // Every accepted profile is flip-stable; every rejected profile has
        // an improving flip.
        let t = circular(3);
        let pay = minority_a();
        let set = enumerate_equilibria(&t, &pay).unwrap();
        let members: std::collections::HashSet<StrategyProfile> =
            set.profiles.iter().cloned().collect();
        let params = match &pay {
            PayoffAssignment::Uniform(p) => p.clone(),
            _ => unreachable!(),
        };
        for bits in 0..1u64 << t.players() {
            let profile = StrategyProfile::from_bits(bits, t.players());
            let mut improvable = false;
            for player in 0..t.players() {
                let opponents: Vec<Strategy> = t
                    .neighbors(player)
                    .iter()
                    .map(|&(j, _)| profile.strategy(j))
                    .collect();
                let played = profile.strategy(player);
                let mine = crate::game::averaged_payoff(played, &opponents, &params).unwrap();
                let other =
                    crate::game::averaged_payoff(played.flipped(), &opponents, &params).unwrap();
                if other > mine {
                    improvable = true;
                }
            }
            assert_eq!(members.contains(&profile), !improvable, "profile {profile}");
        }
    }

    #[test]
    fn matches_best_response_under_generic_uniform_payoffs() {
        let t = ladder(3);
        let params = PayoffParams::from_ints(1, 8, 10, 2).unwrap(); // x=9, y=6
        let regime = regime_of(&reduce(&params).unwrap());
        let pay = PayoffAssignment::Uniform(params);
        for bits in 0..1u64 << t.players() {
            let profile = StrategyProfile::from_bits(bits, t.players());
            let by_rule = (0..t.players()).all(|player| {
                let opponents: Vec<Strategy> = t
                    .neighbors(player)
                    .iter()
                    .map(|&(j, _)| profile.strategy(j))
                    .collect();
                best_response(regime, &opponents).unwrap() == profile.strategy(player)
            });
            assert_eq!(is_equilibrium(&t, &pay, &profile), by_rule);
        }
    }

    #[test]
    fn per_edge_class_with_shared_reduction_matches_uniform() {
        // Same (x, y) per class through different (p, q, r, s).
        let t = circular(4);
        let uniform = PayoffAssignment::Uniform(PayoffParams::from_ints(0, 2, 3, 0).unwrap());
        let shifted = PayoffAssignment::PerEdgeClass {
            rung: PayoffParams::from_ints(0, 2, 3, 0).unwrap(),
            top_rail: PayoffParams::from_ints(1, 5, 4, 3).unwrap(), // x=3, y=2
            bottom_rail: PayoffParams::from_ints(2, 4, 5, 2).unwrap(), // x=3, y=2
        };
        let a = enumerate_equilibria(&t, &uniform).unwrap();
        let b = enumerate_equilibria(&t, &shifted).unwrap();
        assert_eq!(a.profiles, b.profiles);
    }

    #[test]
    fn swap_symmetry_between_mirror_regimes() {
        let t = ladder(4);
        let minority_b = PayoffAssignment::Uniform(PayoffParams::from_ints(0, 3, 2, 0).unwrap());
        let a = enumerate_equilibria(&t, &minority_a()).unwrap();
        let b = enumerate_equilibria(&t, &minority_b).unwrap();
        assert_eq!(a.count, b.count);
        let mut swapped: Vec<StrategyProfile> =
            a.profiles.iter().map(|p| p.swapped()).collect();
        swapped.sort();
        assert_eq!(swapped, b.profiles);
    }
}
