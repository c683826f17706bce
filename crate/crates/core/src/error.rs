// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Errors raised by the graph, coloring and search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not minimally 2-connected: edge {0} can be removed")]
    NotMinimallyTwoConnected(EdgeId),
    #[error("mod-3 construction rejected at ear {ear}: {reason}")]
    Mod3Rejected { ear: usize, reason: String },
    #[error("coloring does not cover the graph: {0}")]
    ColoringMismatch(String),
    #[error("property `{0}` is not closed under reversal")]
    NotReversalClosed(String),
    #[error("graph has {found} edges, exhaustive search is capped at {cap}")]
    EdgeCapExceeded { found: usize, cap: usize },
    #[error("no two edge-disjoint spanning trees (best packing has {found} of {required} edges)")]
    NoTreePair { found: usize, required: usize },
    #[error("pair ({0}, {1}) has no valid path")]
    NoValidPath(VertexId, VertexId),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
