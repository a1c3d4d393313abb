//! Exact-arithmetic toolkit for word growth of finitely presented groups.
//!
//! The pipeline: parse a presentation, build a canonical-form oracle
//! (free reduction, a confluent rewriting system, or small-cancellation
//! reduction), enumerate spheres of the Cayley graph, fit the growth
//! series as a rational function, extract the growth rate from its
//! denominator, and verify sphere/ball estimates with interval arithmetic
//! that only ever rounds outward.

pub mod alphabet;
pub mod asymptotics;
pub mod catalog;
pub mod dehn;
pub mod enumerate;
pub mod error;
pub mod poly;
pub mod presentation;
pub mod rewrite;
pub mod roots;
pub mod series;
pub mod thinness;
pub mod verify;
pub mod word;

pub use alphabet::{Alphabet, Letter};
pub use asymptotics::{extract_asymptotics, smallest_positive_pole, GrowthAsymptotics};
pub use catalog::{catalog_entry, catalog_names, load_builtin, CatalogEntry, Expected, CATALOG};
pub use dehn::{check_small_cancellation, max_piece_length, symmetrize, DehnOracle};
pub use enumerate::{
    enumerate_growth, enumerate_growth_best_effort, enumerate_with_index, ElementIndex,
    EnumerationOptions, GrowthTable, DEFAULT_BUDGET_MB,
};
pub use error::{Error, Result};
pub use poly::{IntPoly, Poly, RatPoly};
pub use presentation::{GroupPresentation, Oracle, OracleChoice};
pub use rewrite::{kb_complete, RewriteRule, RewritingSystem, RulesOrigin, DEFAULT_MAX_LHS_LEN, DEFAULT_MAX_RULES};
pub use roots::{default_root_tolerance, isolate_real_roots, smallest_positive_root, RootInterval};
pub use series::{
    fit_rational, fit_rational_windowed, spherical_volume_convert, RationalGrowthFunction,
    SeriesCoefficients, SeriesKind,
};
pub use thinness::{
    estimate_delta, triangle_defect, GeodesicTriangle, ThinnessReport, TriangleSample,
    DEFAULT_SAMPLE_SEED,
};
pub use verify::{
    check_ball_bounds, check_fiber_bounds, check_fiber_bounds_indexed, check_lemma_inequality,
    epsilon_default, evaluate_rhs_split, lemma_radius_needed, run_theorem_report,
    verify_purely_exponential, BallBoundRow, BallBounds, ConvolutionCheck, FiberCheck,
    FiberWitness, PureExponential, PureVerdict, ReportVerdict, RhsSplit, StageError,
    TheoremReport, FIBER_WITNESS_CAP, PROBE_LADDER,
};
pub use word::Word;
