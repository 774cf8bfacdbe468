//! Report records shared by every check, serialized as JSON lines.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub id: String,
    /// Max-abs entry of lhs − rhs.
    pub residual: f64,
    pub pass: bool,
    /// Label of the parameter point the residual was measured at.
    pub point: String,
}

impl RelationReport {
    pub fn new(id: impl Into<String>, residual: f64, threshold: f64, point: impl Into<String>) -> Self {
        Self { id: id.into(), residual, pass: residual <= threshold, point: point.into() }
    }
}

/// Convergence evidence for one limit check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub check_id: String,
    pub h_values: Vec<f64>,
    /// Distance to the target at each step.
    pub distances: Vec<f64>,
    /// Fitted order p in distance ≈ C·h^p; `None` when every distance is at
    /// rounding level, i.e. the limit value is reached exactly at each step.
    pub fitted_rate: Option<f64>,
    /// Distance of the Richardson-extrapolated value to the target.
    pub extrapolated_distance: f64,
    pub pass: bool,
}

/// One JSON document per line.
pub fn write_json_lines<T: Serialize>(out: &mut impl Write, items: &[T]) -> Result<()> {
    for it in items {
        serde_json::to_writer(&mut *out, it)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
