//! Minimum-area homotopies of closed plane curves.
//!
//! The pipeline: validate a polygonal curve and find its crossings
//! ([`curve`]), build the induced planar subdivision with face areas and
//! winding numbers ([`arrangement`]), test subcurves for being boundaries of
//! immersed disks ([`selfoverlap`]), and search decompositions into such
//! subcurves for the least swept area ([`homotopy`]). [`moves`] works on
//! signed Gauss codes and [`graphdist`] turns the area into a distance between
//! plane graphs.

pub mod arrangement;
pub mod curve;
pub mod error;
pub mod geom;
pub mod graphdist;
pub mod homotopy;
pub mod moves;
pub mod selfoverlap;
pub mod svg;


pub use arrangement::{analyze, CurveAnalysis, Face};
pub use curve::{detect_crossings, load_curve, reverse_curve, ArcSet, ClosedPolyCurve, Crossing, SubcurveRef};
pub use error::{Error, Result};
pub use geom::Point2;
pub use graphdist::{graph_distance, PlaneGraph};
pub use homotopy::{
    decomposition_area, enumerate_valid_anchor_sets, induced_homotopy_frames, min_homotopy_area, Decomposition,
    SigmaResult,
};
pub use moves::{GaussCode, MoveKind};
pub use selfoverlap::{is_self_overlapping, ImmersionWitness};

/// Tolerances, caps and the perturbation seed shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    /// Absolute tolerance for geometric predicates.
    pub tol: f64,
    /// Largest vertex displacement used when perturbing to a normal curve.
    pub perturb_epsilon: f64,
    pub seed: u64,
    /// Crossing cap for the recursive area solver.
    pub cap_crossings: usize,
    /// Crossing cap for exhaustive decomposition enumeration.
    pub cap_enumerate: usize,
    /// Shortest paths kept per vertex pair in graph distances.
    pub cap_paths: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: geom::DEFAULT_TOLERANCE,
            perturb_epsilon: 1e-6,
            seed: 0x5eed,
            cap_crossings: 14,
            cap_enumerate: 12,
            cap_paths: 64,
        }
    }
}
