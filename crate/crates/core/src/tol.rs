//! Numerical tolerance policy.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Thresholds for every numerical decision in the library, plus the seed that
/// drives internal randomized draws (central-projection extraction, corner
/// sampling). Two-threshold pairs create an explicit gray zone: values falling
/// strictly between them are reported as ambiguous instead of being rounded to
/// a verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Singular values (relative to scale) at or below this are treated as zero.
    pub rank_low: f64,
    /// Singular values at or above this are treated as genuinely nonzero;
    /// the open interval `(rank_low, rank_high)` is the ambiguity gray zone.
    pub rank_high: f64,
    /// Relative residual at or below which a matrix counts as a member of a
    /// subspace; residuals between this and `rank_high` are ambiguous.
    pub membership: f64,
    /// Relative gap (against the spectral spread) at which adjacent eigenvalue
    /// clusters are considered separated.
    pub eig_gap: f64,
    /// Seed for internal randomized draws. Re-running a computation with a new
    /// seed is the sanctioned way to resolve an ambiguous verdict.
    pub draw_seed: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_low: 1e-9,
            rank_high: 1e-6,
            membership: 1e-8,
            eig_gap: 1e-6,
            draw_seed: 0,
        }
    }
}

impl Tolerances {
    /// Validate the ordering constraints between thresholds.
    pub fn validate(&self) -> Result<()> {
        let ok = self.rank_low > 0.0
            && self.rank_low < self.rank_high
            && self.rank_high < 1.0
            && self.membership > 0.0
            && self.membership < 1.0
            && self.eig_gap > 0.0
            && self.eig_gap < 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput {
                what: "tolerances".into(),
                detail: format!(
                    "need 0 < rank_low < rank_high < 1, 0 < membership < 1, 0 < eig_gap < 1; got {self:?}"
                ),
            })
        }
    }

    /// Same thresholds, different seed for the internal random draws.
    pub fn with_draw_seed(&self, seed: u64) -> Tolerances {
        Tolerances {
            draw_seed: seed,
            ..self.clone()
        }
    }

    /// Deterministic random stream for an internal draw site. `salt` keys the
    /// site, `attempt` keys the retry round, and both are mixed with
    /// `draw_seed` so bumping the seed refreshes every stream at once.
    pub fn rng(&self, salt: u64, attempt: u64) -> ChaCha8Rng {
        let mut s = self.draw_seed ^ 0x517C_C1B7_2722_0A95;
        s = s.wrapping_add(salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        s = s.wrapping_add(attempt.wrapping_mul(0xD1B5_4A32_D192_ED03));
        ChaCha8Rng::seed_from_u64(s)
    }
}
