use thiserror::Error;

use crate::chart::Chart;
use crate::oracle::ConsistencyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("chart mismatch: {left} vs {right}")]
    ChartMismatch { left: Chart, right: Chart },
    #[error("expected a base chart, got {0}")]
    NotBaseChart(Chart),
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("component uses a symbol outside {0}")]
    ForeignSymbol(Chart),
    #[error("structure does not square to the identity")]
    NotInvolution,
    #[error("connection has nonzero torsion component T[{c}][{a}][{b}]")]
    NonZeroTorsion { c: usize, a: usize, b: usize },
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
}

pub(crate) fn same_chart(left: &Chart, right: &Chart) -> Result<(), GeometryError> {
    if left == right {
        Ok(())
    } else {
        Err(GeometryError::ChartMismatch {
            left: *left,
            right: *right,
        })
    }
}

pub(crate) fn base_only(chart: &Chart) -> Result<(), GeometryError> {
    if chart.is_tangent() {
        Err(GeometryError::NotBaseChart(*chart))
    } else {
        Ok(())
    }
}
