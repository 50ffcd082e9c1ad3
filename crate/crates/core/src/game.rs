//! The two-player anti-coordination game, its averaged payoffs, and the four
//! regime-dependent best-response rules.
//!
//! All payoff arithmetic is exact rational: equilibrium checks compare
//! payoffs whose difference can be arbitrarily close to zero, and a rounding
//! tie would silently change every count downstream.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used for payoffs throughout the crate.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    /// `r > p` and `q > s` must hold for the two NE to be the
    /// anti-coordination pair.
    #[error("not an anti-coordination game: requires r > p and q > s")]
    InvalidGame,
    /// A boundary parameter set (`y = x`, `y = 2x`, or `2y = x`) makes some
    /// best response a tie; the block analysis assumes strict preferences, so
    /// these are rejected outright instead of tie-broken.
    #[error("non-generic parameters: {0} holds exactly")]
    NonGenericParameters(&'static str),
    /// Opponent multisets come from ladder vertices of degree 2 or 3 only.
    #[error("opponent multiset must have 2 or 3 members, got {0}")]
    BadDegree(usize),
}

/// One of the two pure strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    A,
    B,
}

impl Strategy {
    pub fn flipped(self) -> Self {
        match self {
            Strategy::A => Strategy::B,
            Strategy::B => Strategy::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Strategy::A => 'a',
            Strategy::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Strategy::A),
            'b' => Some(Strategy::B),
            _ => None,
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The 2×2 payoff matrix `(p, q, r, s)`: `p` for (a,a), `q` for playing `a`
/// against `b`, `r` for playing `b` against `a`, `s` for (b,b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffParams {
    p: Rational,
    q: Rational,
    r: Rational,
    s: Rational,
}

impl PayoffParams {
    /// Validates the anti-coordination assumption `r > p`, `q > s`.
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational) -> Result<Self, GameError> {
        if r <= p || q <= s {
            return Err(GameError::InvalidGame);
        }
        Ok(Self { p, q, r, s })
    }

    /// Convenience constructor from integers.
    pub fn from_ints(p: i64, q: i64, r: i64, s: i64) -> Result<Self, GameError> {
        let int = |v: i64| Rational::from(BigInt::from(v));
        Self::new(int(p), int(q), int(r), int(s))
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }
    pub fn q(&self) -> &Rational {
        &self.q
    }
    pub fn r(&self) -> &Rational {
        &self.r
    }
    pub fn s(&self) -> &Rational {
        &self.s
    }

    /// Payoff to a player choosing `mine` on one edge whose opponent plays
    /// `theirs`.
    pub fn edge_payoff(&self, mine: Strategy, theirs: Strategy) -> &Rational {
        match (mine, theirs) {
            (Strategy::A, Strategy::A) => &self.p,
            (Strategy::A, Strategy::B) => &self.q,
            (Strategy::B, Strategy::A) => &self.r,
            (Strategy::B, Strategy::B) => &self.s,
        }
    }
}

/// The reduction `x = r − p`, `y = q − s` that the best-response analysis
/// depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedParams {
    x: Rational,
    y: Rational,
}

impl ReducedParams {
    /// Requires `x > 0`, `y > 0` and rejects the three regime boundaries.
    pub fn new(x: Rational, y: Rational) -> Result<Self, GameError> {
        if !x.is_positive() || !y.is_positive() {
            return Err(GameError::InvalidGame);
        }
        let two = Rational::from(BigInt::from(2));
        if y == x {
            return Err(GameError::NonGenericParameters("y = x"));
        }
        if y == &two * &x {
            return Err(GameError::NonGenericParameters("y = 2x"));
        }
        if &two * &y == x {
            return Err(GameError::NonGenericParameters("2y = x"));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }
    pub fn y(&self) -> &Rational {
        &self.y
    }
}

/// Reduces a payoff matrix to `(x, y) = (r − p, q − s)`.
pub fn reduce(params: &PayoffParams) -> Result<ReducedParams, GameError> {
    ReducedParams::new(&params.r - &params.p, &params.q - &params.s)
}

/// Strict sign of a nonzero quantity; zero is excluded by genericity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
}

fn sign_of(v: &Rational) -> Sign {
    debug_assert!(!v.is_zero(), "genericity must be enforced upstream");
    if v.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Signs of the three tie-breaker functions `f = −2x + y`, `g = 2y − x`,
/// `h = y − x` (common denominators dropped; only the signs matter).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegimeSignature {
    pub sign_f: Sign,
    pub sign_g: Sign,
    pub sign_h: Sign,
}

impl RegimeSignature {
    pub fn of(rp: &ReducedParams) -> Self {
        let two = Rational::from(BigInt::from(2));
        let f = &rp.y - &two * &rp.x;
        let g = &two * &rp.y - &rp.x;
        let h = &rp.y - &rp.x;
        Self {
            sign_f: sign_of(&f),
            sign_g: sign_of(&g),
            sign_h: sign_of(&h),
        }
    }
}

/// The four generic parameter regions and their best-response rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `x/2 > y`: play `a` only when everyone else plays `b`.
    LoneA,
    /// `x > y > x/2`: play `a` when two or more opponents play `b`.
    MinorityA,
    /// `2x > y > x`: play `b` when two or more opponents play `a`.
    MinorityB,
    /// `y > 2x`: play `b` only when everyone else plays `a`.
    LoneB,
}

impl Regime {
    /// Maps a sign triple back to its regime. Only four of the eight sign
    /// combinations are geometrically possible; the rest yield `None`.
    pub fn from_signature(sig: &RegimeSignature) -> Option<Self> {
        use Sign::{Negative as N, Positive as P};
        match (sig.sign_f, sig.sign_g, sig.sign_h) {
            (N, N, N) => Some(Regime::LoneA),
            (N, P, N) => Some(Regime::MinorityA),
            (N, P, P) => Some(Regime::MinorityB),
            (P, P, P) => Some(Regime::LoneB),
            _ => None,
        }
    }

    /// The a↔b mirror regime.
    pub fn mirrored(self) -> Self {
        match self {
            Regime::LoneA => Regime::LoneB,
            Regime::MinorityA => Regime::MinorityB,
            Regime::MinorityB => Regime::MinorityA,
            Regime::LoneB => Regime::LoneA,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Regime::LoneA => "LONE_A",
            Regime::MinorityA => "MINORITY_A",
            Regime::MinorityB => "MINORITY_B",
            Regime::LoneB => "LONE_B",
        };
        f.write_str(name)
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "LONE_A" => Ok(Regime::LoneA),
            "MINORITY_A" => Ok(Regime::MinorityA),
            "MINORITY_B" => Ok(Regime::MinorityB),
            "LONE_B" => Ok(Regime::LoneB),
            other => Err(format!("unknown regime {other:?}")),
        }
    }
}

/// Classifies generic reduced parameters into their unique regime.
///
/// Depends only on the ratio `y/x`.
pub fn regime_of(rp: &ReducedParams) -> Regime {
    let two = Rational::from(BigInt::from(2));
    let twice_y = &two * &rp.y;
    let twice_x = &two * &rp.x;
    if twice_y < rp.x {
        Regime::LoneA
    } else if rp.y < rp.x {
        debug_assert!(twice_y > rp.x);
        Regime::MinorityA
    } else if rp.y < twice_x {
        Regime::MinorityB
    } else {
        debug_assert!(rp.y > twice_x);
        Regime::LoneB
    }
}

/// Mean payoff to a player choosing `strategy` against a fixed opponent
/// multiset of size 2 (ladder end) or 3 (middle player).
///
/// Invariant under permutation of the opponents by construction.
pub fn averaged_payoff(
    strategy: Strategy,
    opponents: &[Strategy],
    params: &PayoffParams,
) -> Result<Rational, GameError> {
    if opponents.len() != 2 && opponents.len() != 3 {
        return Err(GameError::BadDegree(opponents.len()));
    }
    let total: Rational = opponents
        .iter()
        .map(|&o| params.edge_payoff(strategy, o).clone())
        .sum();
    Ok(total / Rational::from(BigInt::from(opponents.len() as i64)))
}

/// The regime's best response to an opponent multiset of size 2 or 3.
///
/// Agrees with the argmax of [`averaged_payoff`] for every payoff matrix
/// reducing into the regime; the B regimes are the a↔b mirror images of the
/// A regimes.
pub fn best_response(regime: Regime, opponents: &[Strategy]) -> Result<Strategy, GameError> {
    let degree = opponents.len();
    if degree != 2 && degree != 3 {
        return Err(GameError::BadDegree(degree));
    }
    let n_b = opponents.iter().filter(|&&o| o == Strategy::B).count();
    let n_a = degree - n_b;
    let response = match regime {
        Regime::LoneA => {
            if n_b == degree {
                Strategy::A
            } else {
                Strategy::B
            }
        }
        Regime::MinorityA => {
            if n_b >= 2 {
                Strategy::A
            } else {
                Strategy::B
            }
        }
        Regime::MinorityB => {
            if n_a >= 2 {
                Strategy::B
            } else {
                Strategy::A
            }
        }
        Regime::LoneB => {
            if n_a == degree {
                Strategy::B
            } else {
                Strategy::A
            }
        }
    };
    Ok(response)
}

/// Parses an exact rational from `"3"`, `"-3/2"`, or a decimal like `"0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid rational {text:?}"));
        }
        let negative = int_part.starts_with('-');
        let int: BigInt = int_part
            .parse()
            .map_err(|_| format!("invalid rational {text:?}"))?;
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| format!("invalid rational {text:?}"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let signed_frac = if negative { -frac } else { frac };
        return Ok(Rational::new(int * &scale + signed_frac, scale));
    }
    Rational::from_str(text).map_err(|_| format!("invalid rational {text:?}"))
}
