//! Built-in reconstruction targets and user-defined evaluators.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const VALID_NAMES: &str = "gaussian, cospoly, bump6";

/// A real-valued function on `[-1, 1]` to be recovered from frame data.
#[derive(Clone)]
pub struct TargetFunction {
    name: String,
    smoothness_note: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl TargetFunction {
    pub fn new(
        name: impl Into<String>,
        smoothness_note: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            smoothness_note: smoothness_note.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn smoothness_note(&self) -> &str {
        &self.smoothness_note
    }
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("name", &self.name)
            .finish()
    }
}

/// Looks up one of the built-in targets: `gaussian`, `cospoly`, `bump6`.
pub fn test_function(name: &str) -> Result<TargetFunction> {
    match name {
        "gaussian" => Ok(TargetFunction::new(
            "gaussian",
            "analytic; periodic extension has a first-derivative jump at x = +-1",
            |x| (-x * x).exp(),
        )),
        "cospoly" => Ok(TargetFunction::new(
            "cospoly",
            "analytic; periodic extension has a first-derivative jump at x = +-1",
            |x| (std::f64::consts::PI * x).cos().powi(3) * (x.sin().powi(2) + 1.0),
        )),
        "bump6" => Ok(TargetFunction::new(
            "bump6",
            "degree-6 polynomial vanishing to second order at x = +-1; \
             periodic extension is C^2 with a third-derivative jump",
            |x| {
                let u = 1.0 - x * x;
                u * u * u
            },
        )),
        other => Err(Error::UnknownFunction {
            name: other.to_string(),
            valid: VALID_NAMES,
        }),
    }
}
