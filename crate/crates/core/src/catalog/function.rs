use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::mat2::Mat2;

pub type Evaluator = Arc<dyn Fn(f64) -> Mat2 + Send + Sync>;

/// Open interval, either end possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub fn new(lo: f64, hi: f64) -> Self {
        Domain { lo, hi }
    }

    pub fn real_line() -> Self {
        Domain::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn half_line() -> Self {
        Domain::new(0.0, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn contains_closed(&self, lo: f64, hi: f64) -> bool {
        self.contains(lo) && self.contains(hi)
    }
}

/// How the 2×2 output is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layout {
    /// Genuinely coupled two-component operator.
    Coupled,
    /// Diagonal output standing for two independent scalar problems.
    DirectSum,
    /// One scalar channel stored in the (0,0) entry.
    Scalar,
}

impl Layout {
    pub fn channels(self) -> usize {
        match self {
            Layout::Scalar => 1,
            _ => 2,
        }
    }
}

/// x ↦ 2×2 real symmetric matrix with its analytic derivative.
#[derive(Clone)]
pub struct MatrixFunction {
    value: Evaluator,
    derivative: Evaluator,
    domain: Domain,
    window: (f64, f64),
    layout: Layout,
}

impl fmt::Debug for MatrixFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixFunction")
            .field("domain", &self.domain)
            .field("window", &self.window)
            .field("layout", &self.layout)
            .finish_non_exhaustive()
    }
}

impl MatrixFunction {
    /// `window` is a closed sub-interval of the domain where evaluation is
    /// well conditioned; it is what sampling-based checks use.
    pub fn new(
        value: impl Fn(f64) -> Mat2 + Send + Sync + 'static,
        derivative: impl Fn(f64) -> Mat2 + Send + Sync + 'static,
        domain: Domain,
        window: (f64, f64),
    ) -> Self {
        MatrixFunction {
            value: Arc::new(value),
            derivative: Arc::new(derivative),
            domain,
            window,
            layout: Layout::Coupled,
        }
    }

    /// Scalar function f with derivative df, stored in the (0,0) entry.
    pub fn scalar(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain: Domain,
        window: (f64, f64),
    ) -> Self {
        MatrixFunction::new(
            move |x| Mat2::diag(f(x), 0.0),
            move |x| Mat2::diag(df(x), 0.0),
            domain,
            window,
        )
        .with_layout(Layout::Scalar)
    }

    /// The zero function on `domain`.
    pub fn zero(domain: Domain, window: (f64, f64), layout: Layout) -> Self {
        MatrixFunction::new(|_| Mat2::ZERO, |_| Mat2::ZERO, domain, window).with_layout(layout)
    }

    pub fn with_layout(mut self, layout: Layout) -> Self {
        self.layout = layout;
        self
    }

    pub fn eval(&self, x: f64) -> Mat2 {
        (self.value)(x)
    }

    pub fn derivative(&self, x: f64) -> Mat2 {
        (self.derivative)(x)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// The same function plus `s·I`.
    pub fn shifted(&self, s: f64) -> MatrixFunction {
        let v = self.value.clone();
        let mut out = self.clone();
        out.value = Arc::new(move |x| v(x) + Mat2::IDENTITY.scale(s));
        out
    }

    /// Channel `k` of a direct sum as a scalar function.
    pub fn channel(&self, k: usize) -> MatrixFunction {
        let v = self.value.clone();
        let d = self.derivative.clone();
        let pick = move |m: Mat2| if k == 0 { m.a } else { m.d };
        MatrixFunction::scalar(
            move |x| pick(v(x)),
            move |x| pick(d(x)),
            self.domain,
            self.window,
        )
    }

    /// `samples` points spread evenly over the interior of the window.
    pub fn sample_points(&self, samples: usize) -> Vec<f64> {
        let (lo, hi) = self.window;
        (0..samples)
            .map(|i| lo + (hi - lo) * (i as f64 + 0.5) / samples as f64)
            .collect()
    }
}
