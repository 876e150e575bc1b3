//! Explicit pairs on the projective line: split bundles, polynomial
//! sections, generated subsheaves and their saturations, and a search for
//! destabilizing subpairs.

mod bundle;
mod form;
pub mod search;
mod subsheaf;

pub use bundle::{h0_split, PairP1, PolySection, SplitBundle};
pub use form::{det, BinaryForm};
pub use search::{
    alpha_range_report, destabilizer_search, enumerate_subpairs, families, family, Certificate, Probe,
    RangeEntry, RangeReport, SearchOptions, SearchVerdict, Subpair, SubpairFamily,
};
pub use subsheaf::{
    generated_subsheaf_data, generic_rank, lambda_cap_h0, level_span_dim, saturation_data, GeneratedData,
    Saturation,
};
