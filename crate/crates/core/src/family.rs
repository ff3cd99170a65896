use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::lines::{BentRule, BlockRule};
use crate::square::Square;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    General,
    Associative,
    /// Associative and pandiagonal.
    Ultra,
    Franklin,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::General => "general",
            Family::Associative => "associative",
            Family::Ultra => "ultra",
            Family::Franklin => "franklin",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Family::General),
            "associative" => Ok(Family::Associative),
            "ultra" => Ok(Family::Ultra),
            "franklin" => Ok(Family::Franklin),
            _ => Err(Error::UnsupportedFamily { family: s.to_string(), order: 0 }),
        }
    }
}

/// The constraint set defining a Franklin square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FranklinRules {
    pub main_diagonals: bool,
    pub blocks: BlockRule,
    pub bent: BentRule,
}

impl Default for FranklinRules {
    /// The configuration that reproduces the published order-8 count.
    fn default() -> Self {
        FranklinRules { main_diagonals: true, blocks: BlockRule::Overlapping, bent: BentRule::Wrapped }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub order: usize,
    /// Ignored unless `family` is [`Family::Franklin`].
    pub franklin: FranklinRules,
}

impl FamilySpec {
    pub const SUPPORTED: [(Family, usize); 6] = [
        (Family::General, 3),
        (Family::General, 4),
        (Family::Associative, 4),
        (Family::Associative, 5),
        (Family::Ultra, 5),
        (Family::Franklin, 8),
    ];

    pub fn new(family: Family, order: usize) -> Result<Self> {
        Self::with_rules(family, order, FranklinRules::default())
    }

    pub fn with_rules(family: Family, order: usize, franklin: FranklinRules) -> Result<Self> {
        if !Self::SUPPORTED.contains(&(family, order)) {
            return Err(Error::UnsupportedFamily { family: family.to_string(), order });
        }
        Ok(FamilySpec { family, order, franklin })
    }

    /// Magic (rows, columns, main diagonals) plus the family's own conditions.
    /// Franklin squares are only held to main diagonals when the rules say so.
    pub fn admits(&self, sq: &Square) -> bool {
        if sq.order() != self.order {
            return false;
        }
        match self.family {
            Family::General => sq.is_magic(),
            Family::Associative => sq.is_magic() && sq.is_associative(),
            Family::Ultra => sq.is_magic() && sq.is_ultra(),
            // Half-lines imply full rows and columns.
            Family::Franklin => sq.is_franklin(&self.franklin).unwrap_or(false),
        }
    }

    /// Short stable description of every option that changes the corpus.
    pub fn fingerprint(&self) -> String {
        let base = format!("{}-{}", self.family, self.order);
        if self.family != Family::Franklin {
            return base;
        }
        let blocks = match self.franklin.blocks {
            BlockRule::Aligned => "aligned",
            BlockRule::Overlapping => "overlapping",
            BlockRule::Wrapped => "wrapped",
        };
        let bent = match self.franklin.bent {
            BentRule::Wrapped => "wrapped",
            BentRule::Unwrapped => "unwrapped",
        };
        let diag = if self.franklin.main_diagonals { "on" } else { "off" };
        format!("{base}/blocks={blocks}/bent={bent}/diagonals={diag}")
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::fixtures::*;

    #[test]
    fn supported_pairs_only() {
        for (family, order) in FamilySpec::SUPPORTED {
            assert!(FamilySpec::new(family, order).is_ok());
        }
        assert!(FamilySpec::new(Family::General, 6).is_err());
        assert!(FamilySpec::new(Family::General, 5).is_err());
        assert!(FamilySpec::new(Family::Franklin, 4).is_err());
        assert!("pentagonal".parse::<Family>().is_err());
    }

    #[test]
    fn admits_examples() {
        let g3 = FamilySpec::new(Family::General, 3).unwrap();
        assert!(g3.admits(&lo_shu()));
        let a4 = FamilySpec::new(Family::Associative, 4).unwrap();
        assert!(a4.admits(&durer()));
        assert!(!a4.admits(&lo_shu()));
        let u5 = FamilySpec::new(Family::Ultra, 5).unwrap();
        assert!(u5.admits(&pandiagonal5()));
        let f8 = FamilySpec::new(Family::Franklin, 8).unwrap();
        // the historical square misses its main diagonals
        assert!(!f8.admits(&franklin8()));
        let lax = FranklinRules { main_diagonals: false, ..FranklinRules::default() };
        let lax = FamilySpec::with_rules(Family::Franklin, 8, lax).unwrap();
        assert!(lax.admits(&franklin8()));
    }
}
