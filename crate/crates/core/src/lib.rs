//! Exact combinatorics for Nakajima quiver varieties and surface-group
//! character varieties.
//!
//! Everything here is computed from the quiver, a dimension vector and the
//! parameter covectors alone: root data, the canonical decomposition, the
//! stratification by representation type, resolution verdicts and the
//! codimension-two leaves. No representation space is ever built.
//!
//! The modules layer bottom-up:
//!
//! * [`quiver`]: quivers, dimension vectors, parameter covectors and the
//!   Ringel/Cartan forms.
//! * [`roots`]: classification and enumeration of positive roots.
//! * [`decomp`]: restricted roots, the set of stable dimension vectors and
//!   the canonical decomposition.
//! * [`variety`]: per-variety verdicts and strata.
//! * [`leaves`]: isotropic decompositions, affine Dynkin recognition and
//!   Namikawa Weyl factors.
//! * [`charvar`]: GL/SL character varieties of closed surfaces.
//! * [`corpus`]: builtin quivers and the reference instance list.

pub mod charvar;
pub mod corpus;
pub mod decomp;
mod error;
pub mod leaves;
pub mod quiver;
pub mod roots;
pub mod variety;

pub use error::{Error, Result};
pub use quiver::{Covector, DimVector, ParamSet, Quiver};
pub use roots::{RootInfo, RootKind};
