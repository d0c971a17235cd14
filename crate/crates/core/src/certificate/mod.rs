//! Certificates for both outcomes of a 3-coloring query.
//!
//! A [`ColoringCertificate`] lists at most three color classes over the
//! original vertices. An [`UncolorabilityCertificate`] is a replayable
//! sequence of unavoidable contractions that ends in an explicit K4.
//!
//! # Vertex ids
//!
//! Steps name live super-vertices. Replay starts with the id counter at the
//! graph's next free id. Every contraction creates its survivor with the
//! current counter value and then advances the counter. A nested certificate
//! is checked in its own scope. For [`Justification::NestedEdge`] the scope
//! starts at the current counter. For [`Justification::NestedTadpole`] the
//! contraction `x w` takes the current counter as its survivor, and the
//! nested scope starts one past it. Nested scopes never advance the outer
//! counter.
//!
//! # Why each justification is sound
//!
//! * Diamond: `u` and `v` both see the adjacent spine `z w`, so in any
//!   3-coloring they take the one color left over.
//! * Nested edge: if `G + uv` has no 3-coloring, then every 3-coloring of
//!   `G` gives `u` and `v` the same color.
//! * Nested tadpole: `w` sees `z`, and the triangle `x y z` uses all three
//!   colors, so `w` shares the color of `x` or of `y`. If `G / xw` has no
//!   3-coloring, `w` must share the color of `y`. The step therefore
//!   contracts `y w`.

mod text;
mod verify;

pub use text::{parse_certificate, write_coloring, write_uncolorability, Certificate, FormatError};
pub use verify::{
    certificate_size, check_coloring, check_uncolorability, verification_step_count, verify_coloring,
    verify_uncolorability, Rejection,
};

use std::fmt;

use crate::graph::{TadpoleWitness, VertexId};

/// Up to three color classes over original vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCertificate {
    pub classes: Vec<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncolorabilityCertificate {
    pub steps: Vec<ContractionStep>,
    pub k4: [VertexId; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionStep {
    pub pair: (VertexId, VertexId),
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// `spine` is the adjacent pair seen by both members of `pair`.
    Diamond { spine: (VertexId, VertexId) },
    /// Certificate for the current graph plus the edge `pair`.
    NestedEdge(Box<UncolorabilityCertificate>),
    /// `pair` is `{y, w}`; `nested` certifies the current graph with `x w`
    /// contracted.
    NestedTadpole { tadpole: TadpoleWitness, nested: Box<UncolorabilityCertificate> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    No,
    Yes,
    Undetermined,
}

impl Verdict {
    /// `0`, `1`, or `inf`.
    pub fn code(self) -> &'static str {
        match self {
            Verdict::No => "0",
            Verdict::Yes => "1",
            Verdict::Undetermined => "inf",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverOutcome {
    No(UncolorabilityCertificate),
    Yes(ColoringCertificate),
    Undetermined,
}

impl SolverOutcome {
    pub fn verdict(&self) -> Verdict {
        match self {
            SolverOutcome::No(_) => Verdict::No,
            SolverOutcome::Yes(_) => Verdict::Yes,
            SolverOutcome::Undetermined => Verdict::Undetermined,
        }
    }

    pub fn is_determinate(&self) -> bool {
        !matches!(self, SolverOutcome::Undetermined)
    }
}
