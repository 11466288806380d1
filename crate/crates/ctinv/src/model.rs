//! Model descriptions and the graphs they build.

use std::fmt;
use std::path::PathBuf;

use exactalg::Rational;
use loopmodel::{build_cycle_graph, build_point_graph, build_product_graph, load_edge_list, MetricGraph};

use crate::CtError;

/// A closed manifold modelled by a metric graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSpec {
    Point,
    /// Cycle on `m` vertices of total length `length`.
    Circle { m: usize, length: Rational },
    /// ℓ¹ product of two cycles.
    Torus { m1: usize, l1: Rational, m2: usize, l2: Rational },
    /// Edge-list file: first line `m d L`, then `u v length`.
    EdgeList(PathBuf),
}

impl ModelSpec {
    pub fn build(&self) -> Result<MetricGraph, CtError> {
        Ok(match self {
            ModelSpec::Point => build_point_graph(),
            ModelSpec::Circle { m, length } => build_cycle_graph(*m, length.clone())?,
            ModelSpec::Torus { m1, l1, m2, l2 } => build_product_graph(&build_cycle_graph(*m1, l1.clone())?, &build_cycle_graph(*m2, l2.clone())?),
            ModelSpec::EdgeList(path) => load_edge_list(path)?,
        })
    }

    /// The circle length when this is a cycle model.
    pub fn circle_length(&self) -> Option<&Rational> {
        match self {
            ModelSpec::Circle { length, .. } => Some(length),
            _ => None,
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Point => write!(f, "point"),
            ModelSpec::Circle { m, length } => write!(f, "circle {m} {length}"),
            ModelSpec::Torus { m1, l1, m2, l2 } => write!(f, "torus {m1} {l1} {m2} {l2}"),
            ModelSpec::EdgeList(p) => write!(f, "edges {}", p.display()),
        }
    }
}
