use std::fmt;
use std::str::FromStr;

/// Slack when deciding whether `stop` lies on the step lattice.
const LATTICE_SLACK: f64 = 1e-9;

/// `start:stop:step`, or a single value.
///
/// Points are `start + k·step`; `stop` itself is included when
/// `(stop - start) / step` is an integer within `1e-9`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Sweep {
    pub fn single(v: f64) -> Self {
        Sweep { start: v, stop: v, step: 1.0 }
    }

    pub fn points(&self) -> Vec<f64> {
        let span = (self.stop - self.start) / self.step;
        let nearest = span.round();
        let on_lattice = (span - nearest).abs() <= LATTICE_SLACK;
        let last = if on_lattice { nearest } else { (span + LATTICE_SLACK).floor() };
        if last < 0.0 {
            return Vec::new();
        }
        let last = last as usize;
        (0..=last)
            .map(|k| if k == last && on_lattice { self.stop } else { self.start + k as f64 * self.step })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
        let sweep = match parts.as_slice() {
            [v] => Sweep::single(num(v)?),
            [a, b, c] => Sweep { start: num(a)?, stop: num(b)?, step: num(c)? },
            _ => return Err(format!("expected start:stop:step or a single value, got {s:?}")),
        };
        if !(sweep.step > 0.0) || !sweep.step.is_finite() {
            return Err(format!("sweep step must be positive, got {}", sweep.step));
        }
        if !sweep.start.is_finite() || !sweep.stop.is_finite() {
            return Err(format!("sweep bounds must be finite in {s:?}"));
        }
        if sweep.stop < sweep.start {
            return Err(format!("sweep stop {} is below start {}", sweep.stop, sweep.start));
        }
        Ok(sweep)
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}
