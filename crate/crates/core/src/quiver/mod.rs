//! Quivers, dimension vectors, the Ringel form and Weyl-group reflections.
//!
//! Vertices are numbered from 1 in every public interface (arrows, words,
//! file formats); [`DimVector`] coordinates are stored in vertex order.

mod dimvec;
mod roots;

use std::collections::HashSet;

pub use dimvec::DimVector;
pub use roots::{CandidateRoutes, ReflectionWord};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver without loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Validates vertex range, loop-freeness and label uniqueness.
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut labels = HashSet::new();
        for a in &arrows {
            for v in [a.tail, a.head] {
                if v == 0 || v > vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a.tail == a.head {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} is a loop at vertex {}",
                    a.label, a.tail
                )));
            }
            if !labels.insert(a.label.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow label {}", a.label)));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// Builds a quiver from `(label, tail, head)` triples.
    pub fn from_triples(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        Quiver::new(
            vertex_count,
            arrows
                .iter()
                .map(|&(label, tail, head)| Arrow {
                    label: label.to_string(),
                    tail,
                    head,
                })
                .collect(),
        )
    }

    /// The generalized Kronecker quiver with `m` arrows `1 -> 2`.
    pub fn kronecker(m: usize) -> Self {
        let arrows = (1..=m)
            .map(|i| Arrow {
                label: format!("k{i}"),
                tail: 1,
                head: 2,
            })
            .collect();
        Quiver::new(2, arrows).expect("Kronecker quiver is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex == 0 || vertex > self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex,
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }

    pub fn check_len(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.vertex_count {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// The coordinate vector `e_i` (1-based vertex).
    pub fn simple_root(&self, vertex: usize) -> Result<DimVector> {
        self.check_vertex(vertex)?;
        Ok(DimVector::unit(self.vertex_count, vertex))
    }

    /// The Ringel form `<a,b> = sum_i a[i]b[i] - sum_arrows a[t]b[h]`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        let diagonal: i64 = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
        let arrows: i64 = self
            .arrows
            .iter()
            .map(|arr| a.at(arr.tail) * b.at(arr.head))
            .sum();
        Ok(diagonal - arrows)
    }

    /// The symmetrization `(a,b) = <a,b> + <b,a>`.
    pub fn sym_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        Ok(self.euler_form(a, b)? + self.euler_form(b, a)?)
    }
}
