//! Exact splitting analysis for `z -> z^{p^h}` coverings of the Berkovich
//! affine line over a p-closed mixed-characteristic field, and for the
//! admissible coverings of annuli glued from sequences of degree-p torsors.
//!
//! Every quantity is an element of the value group `p^Q ∪ {0}`, stored as an
//! exact rational base-p logarithm. There is no floating point anywhere:
//! all comparisons, products and powers are decidable and bit-exact.
//!
//! Module map:
//! - [`valgroup`]: value-group arithmetic and p-adic valuations,
//! - [`newton`]: Newton polygons of integer polynomials (independent oracle
//!   for the root-of-unity gap),
//! - [`berkline`]: points `eta_{a,r}` and Gauss-seminorm evaluation,
//! - [`powermap`]: pushforward, fibers and the splitting profile of the
//!   p-power map,
//! - [`interval`] / [`annuli`]: skeleton intervals, annuli, the canonical
//!   retraction and the isomorphism classification,
//! - [`torsor`]: pinned degree-p torsors on annuli as fiber-count queries,
//! - [`glue`]: the glued covering, its restriction certificates and the
//!   unbounded Gauss-fiber growth refutation.

pub mod annuli;
pub mod berkline;
pub mod dsu;
pub mod error;
pub mod glue;
pub mod interval;
pub mod newton;
pub mod powermap;
pub mod rational;
pub mod torsor;
pub mod valgroup;

pub use annuli::{Annulus, CenterTag, NormalizingMap, TubePoint};
pub use berkline::{CenteredPolynomial, LogRadius, PointEta};
pub use error::Error;
pub use glue::{
    Component, ConstructionParams, GluedCovering, MatchingRule, NeighborhoodComponents,
    RefutationReport, RestrictionCertificate, SheetId, Side,
};
pub use interval::{Bound, Interval};
pub use powermap::{FiberProfile, ProfileSegment, PushResult, SplitProfile};
pub use torsor::{Orientation, TorsorSpec};
pub use valgroup::LogMag;

/// Exact rational scalar used for all logarithmic coordinates.
pub type Rational = num_rational::BigRational;

/// Result alias over the library error type.
pub type Result<T> = std::result::Result<T, Error>;
