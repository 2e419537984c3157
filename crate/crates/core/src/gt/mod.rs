//! Group testing: channels given by transition laws `p(y | n, k)`, random
//! and adaptive designs, maximum-likelihood decoding, the information
//! bounds on the number of tests, and interference-graph discovery.
//!
//! Items, defects and users are 0-based indices. Bounds are indexed by the
//! number `i` of misidentified defects: the achievability numerator is
//! `log₂ C(N-K, i) C(K, i)` and the converse numerator `log₂ C(N-K+i, i)`.

mod adaptive;
mod asymptotic;
mod bounds;
mod channel;
mod decode;
mod design;
mod discovery;
mod graph;
mod io;
mod mutual_info;

pub use adaptive::{adaptive_binary_splitting, AdaptiveOutcome};
pub use asymptotic::{asymptotic_t, AsymptoticKind, AsymptoticValue};
pub use bounds::{bounds, default_p_grid, BoundReport, BoundTerm};
pub use channel::{make_channel, ChannelKind, GtChannel, NEGATIVE, POSITIVE, UNCERTAIN};
pub use decode::{ml_decode, Decoded, ML_GUARD};
pub use design::{run_design, sample_defects, TestDesign};
pub use discovery::{discovery_channel, discovery_simulation, DiscoveryReport, DETERMINISTIC_FROM_Q};
pub use graph::{interference_graph, IndependenceNumber, InterferenceGraph, EXACT_MIS_LIMIT};
pub use io::{channel_from_spec, channel_to_spec, design_from_csv, design_to_csv};
pub use mutual_info::{mutual_info, mutual_info_by_counts, MAX_EXACT_K};
