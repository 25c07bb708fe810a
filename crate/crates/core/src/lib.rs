//! Nonlocal curvature flows of locally convex closed curves.
//!
//! A curve with total turning `2mπ` is represented by its support function
//! `h(θ)` on `[0, 2mπ)`. The crate evolves it by the area-preserving or
//! length-preserving flow `h_t = λ − κ^α`, reports a verdict (convergence
//! to an m-fold circle, curvature blow-up or time limit) and monitors the
//! conserved and monotone quantities along the way.
//!
//! - [`grid`]: Fourier collocation on the periodic grid.
//! - [`curve`]: states, initial curves, geometry and classification.
//! - [`flow`]: the RK4 engine in support or curvature form.
//! - [`diagnostics`]: monitored scalars and invariant checks.
//! - [`experiment`]: presets, config files, CSV/JSONL/SVG output.

pub mod curve;
pub mod diagnostics;
pub mod error;
pub mod experiment;
pub mod flow;
pub mod grid;

pub use curve::{
    classify, generate_support, ClassReport, CurvatureState, CurveClass, CurveShape, CurveSpec, FlowKind, FlowParams,
    SupportState,
};
pub use diagnostics::{check_monotonicity, Diagnostics, MonitorReport, MonitorTolerances};
pub use error::{Error, Result};
pub use flow::{run, run_with, RunOptions, RunOutcome, StepControl, Verdict, VerdictKind};
pub use grid::{PeriodicField, PeriodicGrid};
