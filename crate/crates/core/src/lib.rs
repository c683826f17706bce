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

//! Construction, verification and exact solving of pattern-connected edge
//! colorings: colorings in which every pair of vertices is joined by a path
//! whose color sequence has a prescribed property (proper, strongly proper,
//! nonrepetitive, or any user-supplied honest property).

pub mod constructs;
pub mod ears;
pub mod error;
mod flow;
pub mod graph;
pub mod spc;
pub mod trees;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use graph::{Color, EdgeColoring, EdgeId, Graph, VertexId};
pub use words::{Property, SequenceProperty};
