use crate::error::{Error, Result};

/// Two-sided sigmoid window `σ(α₁(q - q_min)) · σ(α₂(q_max - q))` expressing
/// the range of QBER values a setup normally produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QberWindowPrior {
    alpha_low: f64,
    alpha_high: f64,
    q_min: f64,
    q_max: f64,
}

impl QberWindowPrior {
    /// Window used on the reference QKD deployment: slopes 500, range
    /// `[0.01, 0.08]`.
    pub const DEPLOYED: QberWindowPrior = QberWindowPrior {
        alpha_low: 500.0,
        alpha_high: 500.0,
        q_min: 0.01,
        q_max: 0.08,
    };

    pub fn new(alpha_low: f64, alpha_high: f64, q_min: f64, q_max: f64) -> Result<Self> {
        if !(alpha_low > 0.0 && alpha_high > 0.0)
            || !alpha_low.is_finite()
            || !alpha_high.is_finite()
        {
            return Err(Error::argument(
                "sigmoid slopes must be positive and finite",
            ));
        }
        if !(0.0 < q_min && q_min < q_max && q_max < 0.5) {
            return Err(Error::argument(format!(
                "need 0 < q_min < q_max < 0.5, got q_min={q_min} q_max={q_max}"
            )));
        }
        Ok(QberWindowPrior {
            alpha_low,
            alpha_high,
            q_min,
            q_max,
        })
    }

    pub fn alpha_low(&self) -> f64 {
        self.alpha_low
    }
    pub fn alpha_high(&self) -> f64 {
        self.alpha_high
    }
    pub fn q_min(&self) -> f64 {
        self.q_min
    }
    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    /// `ln L₀(q)`, overflow-free for any slope.
    pub fn log_density(&self, q: f64) -> f64 {
        log_sigmoid(self.alpha_low * (q - self.q_min))
            + log_sigmoid(self.alpha_high * (self.q_max - q))
    }
}

/// A-priori weighting applied to the syndrome likelihood.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Prior {
    /// Contributes nothing; the estimate is the plain maximum-likelihood one.
    #[default]
    Flat,
    Window(QberWindowPrior),
}

impl Prior {
    #[inline]
    pub fn log_density(&self, q: f64) -> f64 {
        match self {
            Prior::Flat => 0.0,
            Prior::Window(w) => w.log_density(q),
        }
    }
}

impl From<QberWindowPrior> for Prior {
    fn from(w: QberWindowPrior) -> Self {
        Prior::Window(w)
    }
}

/// `ln L₀(q)` for the given prior.
pub fn window_log_prior(q: f64, prior: &Prior) -> f64 {
    prior.log_density(q)
}

/// `ln σ(x) = -ln(1 + e^{-x})`.
#[inline]
fn log_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        -(-x).exp().ln_1p()
    } else {
        x - x.exp().ln_1p()
    }
}
