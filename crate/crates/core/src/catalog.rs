//! Built-in group catalog.
//!
//! Five presentations chosen to exercise every oracle kind and both the
//! polynomial-correction exponents seen in the verification pipeline:
//! two free groups (rank 2 and rank 1), the plane ℤ² as a non-hyperbolic
//! control, the free product C₂∗C₃, and the genus-2 surface group.

use crate::error::{Error, Result};
use crate::presentation::GroupPresentation;

/// One catalog row. `expected` values are frozen answers used by the test
/// suite; the library itself never consults them.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub source: &'static str,
    /// Radius used by the CLI when `--radius` is absent, sized so the full
    /// verification pipeline stays well under typical memory/time budgets.
    pub default_radius: usize,
    pub expected: Expected,
}

/// Frozen reference answers for a catalog group.
#[derive(Clone, Copy, Debug)]
pub struct Expected {
    /// Sphere sizes from n = 0 upward (a prefix).
    pub spheres: &'static [u64],
    /// Spherical growth function, constant-first integer coefficients.
    pub series_numerator: &'static [i64],
    pub series_denominator: &'static [i64],
    /// Human description of the exponential growth rate.
    pub lambda: &'static str,
}

const F2: &str = "\
# Free group of rank 2.
name = f2
generators = a b
oracle = free
delta = 1
";

const Z: &str = "\
# Infinite cyclic group.
name = z
generators = a
oracle = free
delta = 1
";

const Z2: &str = "\
# Free abelian group of rank 2: not hyperbolic, linear sphere growth.
name = z2
generators = a b
relators = a b a' b'
oracle = kb
delta = 1
";

const C2C3: &str = "\
# Free product C2 * C3, the modular group PSL(2, Z).
name = c2c3
generators = a b
relators = a a, b b b
oracle = kb
delta = 1
";

const SURFACE2: &str = "\
# Fundamental group of the closed orientable genus-2 surface.
name = surface2
generators = a b c d
relators = a b a' b' c d c' d'
oracle = dehn
delta = 3
";

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        key: "c2c3",
        source: C2C3,
        default_radius: 14,
        expected: Expected {
            spheres: &[1, 3, 4, 6, 8, 12, 16, 24, 32],
            series_numerator: &[1, 3, 2],
            series_denominator: &[1, 0, -2],
            lambda: "sqrt(2)",
        },
    },
    CatalogEntry {
        key: "f2",
        source: F2,
        default_radius: 12,
        expected: Expected {
            spheres: &[1, 4, 12, 36, 108],
            series_numerator: &[1, 1],
            series_denominator: &[1, -3],
            lambda: "3",
        },
    },
    CatalogEntry {
        key: "surface2",
        source: SURFACE2,
        default_radius: 8,
        expected: Expected {
            spheres: &[
                1, 8, 56, 392, 2736, 19096, 133288, 930328, 6493536,
            ],
            series_numerator: &[1, 2, 2, 2, 1],
            series_denominator: &[1, -6, -6, -6, 1],
            lambda: "largest root of t^4 - 6t^3 - 6t^2 - 6t + 1 (about 6.9798)",
        },
    },
    CatalogEntry {
        key: "z",
        source: Z,
        default_radius: 16,
        expected: Expected {
            spheres: &[1, 2, 2, 2, 2],
            series_numerator: &[1, 1],
            series_denominator: &[1, -1],
            lambda: "1",
        },
    },
    CatalogEntry {
        key: "z2",
        source: Z2,
        default_radius: 40,
        expected: Expected {
            spheres: &[1, 4, 8, 12, 16],
            series_numerator: &[1, 2, 1],
            series_denominator: &[1, -2, 1],
            lambda: "1",
        },
    },
];

pub fn catalog_names() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.key).collect()
}

pub fn catalog_entry(key: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.key == key)
}

/// Load a built-in group by catalog key.
pub fn load_builtin(key: &str) -> Result<GroupPresentation> {
    let entry = catalog_entry(key).ok_or_else(|| Error::UnknownGroup(key.to_string()))?;
    GroupPresentation::parse(entry.source, entry.key)
}
