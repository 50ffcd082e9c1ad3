//! Ladder and circular-ladder graphs over `2n` players with a fixed
//! canonical indexing shared by every counting method.
//!
//! Players `0..n-1` are the top row left to right, players `n..2n-1` the
//! bottom row left to right; rung `i` joins players `i` and `n + i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::Strategy;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("{kind} requires n >= {min} rungs, got {n}")]
    TooSmall {
        kind: GraphKind,
        min: usize,
        n: usize,
    },
    #[error("invalid profile string at byte {offset}: {reason}")]
    ParseError { offset: usize, reason: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Ladder,
    Circular,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Ladder => f.write_str("ladder"),
            GraphKind::Circular => f.write_str("circular"),
        }
    }
}

/// Which of the three edge families an edge belongs to. Per-edge-class payoff
/// assignments key off this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Rung,
    TopRail,
    BottomRail,
}

/// A ladder (`3n − 2` edges, four degree-2 corners) or circular ladder
/// (`3n` edges, 3-regular) over `2n` players.
#[derive(Clone, Debug)]
pub struct LadderTopology {
    kind: GraphKind,
    n: usize,
    /// Per-player neighbor list in deterministic (left, right, across) order.
    adjacency: Vec<Vec<(usize, EdgeClass)>>,
}

impl LadderTopology {
    /// Builds the graph. Ladders need `n >= 2`; circular ladders need
    /// `n >= 3` (`n <= 2` would collapse to a multigraph).
    pub fn new(kind: GraphKind, n: usize) -> Result<Self, TopologyError> {
        let min = match kind {
            GraphKind::Ladder => 2,
            GraphKind::Circular => 3,
        };
        if n < min {
            return Err(TopologyError::TooSmall { kind, min, n });
        }

        let wrap = kind == GraphKind::Circular;
        let mut adjacency = Vec::with_capacity(2 * n);
        for row in 0..2 {
            let class = if row == 0 {
                EdgeClass::TopRail
            } else {
                EdgeClass::BottomRail
            };
            let base = row * n;
            for i in 0..n {
                let mut nbrs = Vec::with_capacity(3);
                if i > 0 {
                    nbrs.push((base + i - 1, class));
                } else if wrap {
                    nbrs.push((base + n - 1, class));
                }
                if i + 1 < n {
                    nbrs.push((base + i + 1, class));
                } else if wrap {
                    nbrs.push((base, class));
                }
                let across = if row == 0 { n + i } else { i };
                nbrs.push((across, EdgeClass::Rung));
                adjacency.push(nbrs);
            }
        }
        Ok(Self { kind, n, adjacency })
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// Rung count `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Player count `2n`.
    pub fn players(&self) -> usize {
        2 * self.n
    }

    pub fn degree(&self, player: usize) -> usize {
        self.adjacency[player].len()
    }

    /// Neighbors of `player` with their edge classes, in (left, right,
    /// across) order.
    pub fn neighbors(&self, player: usize) -> &[(usize, EdgeClass)] {
        &self.adjacency[player]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// One pure-strategy assignment to all `2n` players in canonical index order.
///
/// Text form is `top|bottom`, lowercase `a`/`b` only, e.g. `"ab|ba"`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrategyProfile(Vec<Strategy>);

impl StrategyProfile {
    pub fn new(assignment: Vec<Strategy>) -> Self {
        Self(assignment)
    }

    pub fn players(&self) -> usize {
        self.0.len()
    }

    pub fn strategies(&self) -> &[Strategy] {
        &self.0
    }

    pub fn strategy(&self, player: usize) -> Strategy {
        self.0[player]
    }

    /// The a↔b mirror image of the profile.
    pub fn swapped(&self) -> Self {
        Self(self.0.iter().map(|s| s.flipped()).collect())
    }

    /// Packs the profile into an integer with player 0 as the most
    /// significant bit (`a = 0`, `b = 1`), so ascending integers enumerate
    /// profiles in lexicographic string order.
    pub(crate) fn to_bits(&self) -> u64 {
        debug_assert!(self.0.len() <= 64);
        let players = self.0.len();
        let mut bits = 0u64;
        for (i, &s) in self.0.iter().enumerate() {
            if s == Strategy::B {
                bits |= 1 << (players - 1 - i);
            }
        }
        bits
    }

    pub(crate) fn from_bits(bits: u64, players: usize) -> Self {
        debug_assert!(players <= 64);
        let assignment = (0..players)
            .map(|i| {
                if bits >> (players - 1 - i) & 1 == 1 {
                    Strategy::B
                } else {
                    Strategy::A
                }
            })
            .collect();
        Self(assignment)
    }
}

impl FromStr for StrategyProfile {
    type Err = TopologyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bytes = text.as_bytes();
        let pipe = match bytes.iter().position(|&b| b == b'|') {
            Some(pos) => pos,
            None => {
                return Err(TopologyError::ParseError {
                    offset: bytes.len(),
                    reason: "missing '|' row separator",
                })
            }
        };
        if pipe == 0 {
            return Err(TopologyError::ParseError {
                offset: 0,
                reason: "empty top row",
            });
        }
        let mut assignment = Vec::with_capacity(bytes.len() - 1);
        for (offset, &byte) in bytes.iter().enumerate() {
            if offset == pipe {
                continue;
            }
            match Strategy::from_char(byte as char) {
                Some(s) if byte.is_ascii() => assignment.push(s),
                _ => {
                    return Err(TopologyError::ParseError {
                        offset,
                        reason: "expected 'a' or 'b'",
                    })
                }
            }
        }
        let bottom_len = bytes.len() - pipe - 1;
        if bottom_len < pipe {
            return Err(TopologyError::ParseError {
                offset: bytes.len(),
                reason: "bottom row shorter than top row",
            });
        }
        if bottom_len > pipe {
            return Err(TopologyError::ParseError {
                offset: pipe + 1 + pipe,
                reason: "bottom row longer than top row",
            });
        }
        Ok(Self(assignment))
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len() / 2;
        for &s in &self.0[..n] {
            write!(f, "{s}")?;
        }
        f.write_str("|")?;
        for &s in &self.0[n..] {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
