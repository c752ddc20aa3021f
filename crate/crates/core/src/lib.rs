//! Poc-sets, their ultrafilters and dual cubings, Roller boundaries of
//! chain-family poc-sets, and the Euclidean wall models used to study the
//! boundary decomposition map and co-compactness.
//!
//! Modules, bottom-up:
//!
//! * [`exact`]: numbers `a + b√3` with rational `a`, `b`;
//! * [`feasibility`]: exact Fourier–Motzkin feasibility of halfspace systems;
//! * [`poc`]: explicit finite poc-sets and ultrafilters;
//! * [`cubing`]: the dual cube complex and the duality round trip;
//! * [`chain`]: poc-sets made of transverse ℤ-chains and their Roller boundary;
//! * [`euclid`]: wall geometry, `ρ`, its image, closure formula, restriction;
//! * [`shadows`]: consistency, `Π₀`, shadows, escaping rays, co-compactness;
//! * [`svg`] and [`io`]: figures and file formats.

pub mod chain;
pub mod cubing;
pub mod euclid;
pub mod exact;
pub mod feasibility;
pub mod fixtures;
pub mod io;
pub mod poc;
pub mod shadows;
pub mod svg;

pub use chain::{ChainFamily, ChainHalfspace, ChainUltrafilter, CutState, End, Signature};
pub use euclid::{DirectionPoint, WallFamily, WallGeometry};
pub use exact::Exact;
pub use poc::{Element, FinitePocSet, PocError, Ultrafilter};
