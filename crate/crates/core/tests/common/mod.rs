//! Shared helpers for the integration suites: canonical payoff sets per
//! regime, seeded random generic payoff generation, and profile transforms.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use laddernash::game::{reduce, regime_of, PayoffParams, Rational, Regime, Strategy};
use laddernash::topology::StrategyProfile;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Canonical representative payoffs for each regime.
pub fn representative_params(regime: Regime) -> PayoffParams {
    let (p, q, r, s) = match regime {
        Regime::MinorityA => (0, 2, 3, 0), // x=3, y=2
        Regime::LoneA => (0, 1, 3, 0),     // x=3, y=1
        Regime::MinorityB => (0, 3, 2, 0), // x=2, y=3
        Regime::LoneB => (0, 3, 1, 0),     // x=1, y=3
    };
    PayoffParams::from_ints(p, q, r, s).unwrap()
}

fn ratio(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A strictly interior fraction in (0, 1).
fn interior_fraction(rng: &mut ChaCha8Rng) -> Rational {
    let denom = rng.random_range(2..=64i64);
    let numer = rng.random_range(1..denom);
    ratio(numer, denom)
}

/// Random generic payoffs landing in the requested regime.
///
/// Draws `x > 0`, places `y` strictly inside the regime's interval, then
/// disperses the slack across `p, q, r, s`.
pub fn random_params_for_regime(rng: &mut ChaCha8Rng, regime: Regime) -> PayoffParams {
    let x = ratio(rng.random_range(1..=40i64), rng.random_range(1..=8i64));
    let t = interior_fraction(rng);
    let y = match regime {
        Regime::LoneA => &x / ratio(2, 1) * &t,
        Regime::MinorityA => &x / ratio(2, 1) * (ratio(1, 1) + &t),
        Regime::MinorityB => &x * (ratio(1, 1) + &t),
        Regime::LoneB => &x * (ratio(2, 1) + &t + ratio(1, 100)),
    };
    let p = ratio(rng.random_range(-20..=20i64), rng.random_range(1..=6i64));
    let s = ratio(rng.random_range(-20..=20i64), rng.random_range(1..=6i64));
    let params = PayoffParams::new(p.clone(), &s + &y, &p + &x, s).unwrap();
    let reduced = reduce(&params).expect("interior samples are generic");
    assert_eq!(regime_of(&reduced), regime, "sampler must land in-regime");
    params
}

/// Per-edge-class payoffs that all reduce to the same `(x, y)` as `base`
/// through different `(p, q, r, s)` offsets.
pub fn shifted_same_reduction(rng: &mut ChaCha8Rng, base: &PayoffParams) -> [PayoffParams; 3] {
    let x = base.r() - base.p();
    let y = base.q() - base.s();
    std::array::from_fn(|_| {
        let p = ratio(rng.random_range(-9..=9i64), rng.random_range(1..=4i64));
        let s = ratio(rng.random_range(-9..=9i64), rng.random_range(1..=4i64));
        PayoffParams::new(p.clone(), &s + &y, &p + &x, s).unwrap()
    })
}

/// Swaps the top and bottom rows.
pub fn flip_rows(profile: &StrategyProfile) -> StrategyProfile {
    let n = profile.players() / 2;
    let old = profile.strategies();
    let mut out: Vec<Strategy> = Vec::with_capacity(2 * n);
    out.extend_from_slice(&old[n..]);
    out.extend_from_slice(&old[..n]);
    StrategyProfile::new(out)
}

/// Mirrors the ladder left to right.
pub fn mirror_columns(profile: &StrategyProfile) -> StrategyProfile {
    let n = profile.players() / 2;
    let old = profile.strategies();
    let mut out = Vec::with_capacity(2 * n);
    out.extend(old[..n].iter().rev());
    out.extend(old[n..].iter().rev());
    StrategyProfile::new(out)
}
