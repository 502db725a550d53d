//! Exact topological invariants of smooth complete intersections
//! `X_n(d_1, …, d_r) ⊂ ℂP^{n+r}`, classification of pairs, and search for
//! distinct multidegrees with matching invariants.
//!
//! ```
//! use complete_intersections::{classify_pair, Multidegree, Relation};
//!
//! let a: Multidegree = "70,16,16,14,7,6".parse().unwrap();
//! let b: Multidegree = "56,49,8,6,5,4,4".parse().unwrap();
//! let verdict = classify_pair(3, &a, &b).unwrap();
//! assert_eq!(verdict.relation, Relation::Diffeomorphic);
//! assert!(verdict.distinct_c1);
//! ```

pub mod arith;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod invariants;
pub mod report;
pub mod search;

pub use arith::{factorize, merge_factorizations, newton_g, padic_valuation, Factorization};
pub use classify::{
    classify_pair, dim2_homeo_not_diffeo, fkw_homeomorphic, jupp_wall_diffeomorphic,
    rigidity_excludes_pair, traving_condition, traving_thresholds, ClassificationVerdict,
    Criterion, Relation, TravingThreshold,
};
pub use corpus::{verify_corpus, Corpus, VerificationReport};
pub use error::{Error, Result};
pub use invariants::{
    chern_coefficient, euler_characteristic, pontrjagin_coefficient, power_sums, profile,
    total_degree, InvariantProfile, Multidegree, PowerSums,
};
pub use search::{
    enumerate_multidegrees, match_key, search_pairs, verify_known_pair, C1Filter, KeyMode,
    MatchKey, PairCheck, PairReport, SearchConfig,
};
