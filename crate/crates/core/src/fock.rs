//! Finite Fock-basis superpositions, the generalized binomial family, and
//! photon addition / subtraction.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{binomial, falling_factorial, rising_factorial};

/// Tolerance on `Σ|C_n|² = 1` for every state handed out by this module.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Pure state `Σ_j C_j |offset + j⟩`, always normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct QuditState {
    amplitudes: Vec<Complex64>,
    offset: u32,
}

impl QuditState {
    /// Amplitudes in Fock order starting at [`offset`](Self::offset).
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Fock index of the first stored amplitude.
    pub fn offset(&self) -> u32 {
        self.offset
    }

    /// Number of stored amplitudes.
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Highest stored Fock index.
    pub fn max_index(&self) -> u32 {
        self.offset + self.amplitudes.len() as u32 - 1
    }

    /// Lowest Fock index carrying a nonzero amplitude.
    pub fn min_occupied(&self) -> u32 {
        let j = self.amplitudes.iter().position(|c| c.norm_sqr() > 0.0).unwrap_or(0);
        self.offset + j as u32
    }

    /// Highest Fock index carrying a nonzero amplitude.
    pub fn max_occupied(&self) -> u32 {
        let j = self.amplitudes.iter().rposition(|c| c.norm_sqr() > 0.0).unwrap_or(0);
        self.offset + j as u32
    }

    /// Amplitude of `|n⟩`, zero outside the stored window.
    pub fn amplitude(&self, n: u32) -> Complex64 {
        if n < self.offset {
            return Complex64::new(0.0, 0.0);
        }
        self.amplitudes
            .get((n - self.offset) as usize)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// `(n, C_n)` pairs over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(j, &c)| (self.offset + j as u32, c))
    }

    /// Photon-number distribution `|C_n|²` over the stored window.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Hash of the offset and the exact amplitude bit patterns.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.offset.hash(&mut h);
        for c in &self.amplitudes {
            c.re.to_bits().hash(&mut h);
            c.im.to_bits().hash(&mut h);
        }
        h.finish()
    }

    /// Fock state `|n⟩`.
    pub fn fock(n: u32) -> Self {
        QuditState { amplitudes: vec![Complex64::new(1.0, 0.0)], offset: n }
    }

    pub fn to_record(&self) -> StateRecord {
        StateRecord {
            offset: self.offset,
            amplitudes: self.amplitudes.iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    /// Rebuilds a state from a record without renormalizing, so the round
    /// trip is bit-exact.
    pub fn from_record(record: &StateRecord) -> Result<Self> {
        if record.amplitudes.is_empty() {
            return Err(Error::Record("empty amplitude list".into()));
        }
        let amplitudes: Vec<Complex64> =
            record.amplitudes.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        if amplitudes.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Record("non-finite amplitude".into()));
        }
        let state = QuditState { amplitudes, offset: record.offset };
        let dev = (state.norm_sqr() - 1.0).abs();
        if dev > NORM_TOLERANCE {
            return Err(Error::Record(format!("amplitudes not normalized (|Σ|C|² - 1| = {dev:e})")));
        }
        Ok(state)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("state record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let record: StateRecord =
            serde_json::from_str(text).map_err(|e| Error::Record(e.to_string()))?;
        Self::from_record(&record)
    }
}

/// Serialized form of a [`QuditState`]: offset plus `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub offset: u32,
    pub amplitudes: Vec<[f64; 2]>,
}

/// Normalizes `amplitudes` and places them at `|offset⟩, |offset+1⟩, ...`.
pub fn make_qudit(amplitudes: &[Complex64], offset: u32) -> Result<QuditState> {
    if amplitudes.is_empty() {
        return Err(Error::ZeroState("empty amplitude list".into()));
    }
    if amplitudes.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Domain("non-finite amplitude".into()));
    }
    let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroState("all amplitudes are zero".into()));
    }
    Ok(QuditState { amplitudes: amplitudes.iter().map(|c| c / norm).collect(), offset })
}

/// Real-amplitude convenience wrapper around [`make_qudit`].
pub fn make_real_qudit(amplitudes: &[f64], offset: u32) -> Result<QuditState> {
    let c: Vec<Complex64> = amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    make_qudit(&c, offset)
}

/// Parameters `(M, p, q)` of the generalized binomial family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NgbsParams {
    pub m: u32,
    pub p: f64,
    pub q: f64,
}

impl NgbsParams {
    pub fn new(m: u32, p: f64, q: f64) -> Self {
        NgbsParams { m, p, q }
    }

    /// `(p + n q) / (1 + M q)`, the per-index success fraction.
    pub fn fraction(&self, n: u32) -> f64 {
        (self.p + n as f64 * self.q) / (1.0 + self.m as f64 * self.q)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.p.is_finite() || !self.q.is_finite() {
            return Err(Error::Domain("p and q must be finite".into()));
        }
        if self.p <= 0.0 {
            return Err(Error::Domain(format!(
                "p must be positive (p = {} gives a zero state)",
                self.p
            )));
        }
        let denom = 1.0 + self.m as f64 * self.q;
        if denom <= 0.0 {
            return Err(Error::Domain(format!("1 + M q must be positive, got {denom}")));
        }
        for n in 0..=self.m {
            let x = self.fraction(n);
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::Domain(format!(
                    "(p + n q)/(1 + M q) = {x} lies outside [0, 1] at n = {n}"
                )));
            }
        }
        Ok(())
    }

    /// Unnormalized weights `C_n²`, `n = 0..=M`, as given by the amplitude
    /// formula (the `n = 0` term carries the reciprocal `x_0^{-1}`).
    pub fn raw_weights(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let lead = self.p / (1.0 + self.m as f64 * self.q);
        (0..=self.m)
            .map(|n| {
                let x = self.fraction(n);
                let w = lead
                    * binomial(self.m, n).to_f64()
                    * x.powi(n as i32 - 1)
                    * (1.0 - x).powi((self.m - n) as i32);
                if w < 0.0 || !w.is_finite() {
                    Err(Error::Domain(format!("amplitude weight at n = {n} is {w}")))
                } else {
                    Ok(w)
                }
            })
            .collect()
    }
}

/// Generalized binomial state together with `|Σ C_n² - 1|` before the
/// explicit renormalization.
#[derive(Debug, Clone, PartialEq)]
pub struct NgbsState {
    pub state: QuditState,
    pub prenorm_deviation: f64,
}

pub fn ngbs_with_deviation(params: &NgbsParams) -> Result<NgbsState> {
    let weights = params.raw_weights()?;
    let total: f64 = weights.iter().sum();
    let amps: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();
    let state = make_real_qudit(&amps, 0)?;
    Ok(NgbsState { state, prenorm_deviation: (total - 1.0).abs() })
}

pub fn ngbs(params: &NgbsParams) -> Result<QuditState> {
    ngbs_with_deviation(params).map(|s| s.state)
}

/// Binomial state `√(C(M,n) pⁿ (1-p)^{M-n})`, the `q = 0` member of the family.
pub fn binomial_state(m: u32, p: f64) -> Result<QuditState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("binomial p must lie in [0, 1], got {p}")));
    }
    let amps: Vec<f64> = (0..=m)
        .map(|n| (binomial(m, n).to_f64() * p.powi(n as i32) * (1.0 - p).powi((m - n) as i32)).sqrt())
        .collect();
    make_real_qudit(&amps, 0)
}

fn renormalize(raw: Vec<Complex64>, offset: u32, closed_form_norm_sqr: f64) -> Result<QuditState> {
    let explicit: f64 = raw.iter().map(|c| c.norm_sqr()).sum();
    if explicit == 0.0 {
        return Err(Error::ZeroState("operation annihilates the state".into()));
    }
    debug_assert!(
        (explicit - closed_form_norm_sqr).abs() <= NORM_TOLERANCE * explicit.max(1.0),
        "closed-form normalization {closed_form_norm_sqr} disagrees with explicit {explicit}"
    );
    make_qudit(&raw, offset)
}

/// `N_r a†^r |ψ⟩`.
pub fn add_photons(state: &QuditState, r: u32) -> QuditState {
    if r == 0 {
        return state.clone();
    }
    let mut closed = 0.0;
    let raw: Vec<Complex64> = state
        .iter()
        .map(|(n, c)| {
            let ratio = rising_factorial(n, r).to_f64();
            closed += c.norm_sqr() * ratio;
            c * ratio.sqrt()
        })
        .collect();
    renormalize(raw, state.offset + r, closed).expect("photon addition never annihilates a state")
}

/// `N_t a^t |ψ⟩`; components below `|t⟩` are annihilated.
pub fn subtract_photons(state: &QuditState, t: u32) -> Result<QuditState> {
    if t == 0 {
        return Ok(state.clone());
    }
    let mut closed = 0.0;
    let raw: Vec<Complex64> = state
        .iter()
        .filter(|&(n, _)| n >= t)
        .map(|(n, c)| {
            let ratio = falling_factorial(n, t).to_f64();
            closed += c.norm_sqr() * ratio;
            c * ratio.sqrt()
        })
        .collect();
    if raw.iter().all(|c| c.norm_sqr() == 0.0) {
        return Err(Error::ZeroState(format!(
            "subtracting {t} photons annihilates a state with maximum occupation {}",
            state.max_occupied()
        )));
    }
    let offset = state.offset.saturating_sub(t);
    renormalize(raw, offset, closed)
}
