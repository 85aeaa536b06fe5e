//! Normally ordered moments `⟨a†ᵏ aˡ⟩` computed directly from the Fock
//! amplitudes, plus factorial and raw photon-number moments.

use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;

use crate::fock::QuditState;
use crate::specfun::{log_falling, stirling2_row};

/// Creation power `k` and annihilation power `l` of `a†ᵏ aˡ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentOrder {
    pub k: u32,
    pub l: u32,
}

impl MomentOrder {
    pub fn new(k: u32, l: u32) -> Self {
        MomentOrder { k, l }
    }
}

/// `⟨ψ| a†ᵏ aˡ |ψ⟩`.
///
/// `aˡ` maps `|n⟩` to `√(n!/(n-l)!) |n-l⟩` and `a†ᵏ` then lands on
/// `|n-l+k⟩` with `√((n-l+k)!/(n-l)!)`; ladder factors are taken in log
/// space so large indices do not overflow.
pub fn moment(state: &QuditState, k: u32, l: u32) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, c_n) in state.iter() {
        if n < l || c_n.norm_sqr() == 0.0 {
            continue;
        }
        let m = n - l + k;
        let c_m = state.amplitude(m);
        if c_m.norm_sqr() == 0.0 {
            continue;
        }
        let ladder = (0.5 * (log_falling(n, l) + log_falling(m, k))).exp();
        acc += c_m.conj() * c_n * ladder;
    }
    acc
}

/// `⟨a†ᵐ aᵐ⟩`.
pub fn factorial_moment(state: &QuditState, m: u32) -> f64 {
    moment(state, m, m).re
}

/// `⟨Nᵐ⟩ = Σ_k S2(m,k) ⟨a†ᵏ aᵏ⟩`.
pub fn number_moment(state: &QuditState, m: u32) -> f64 {
    stirling2_row(m)
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(k, s)| s.to_f64() * factorial_moment(state, k as u32))
        .sum()
}

/// Anti-normally ordered `⟨aˡ a†ˡ⟩ = ‖a†ˡ ψ‖²`.
pub fn antinormal_moment(state: &QuditState, l: u32) -> f64 {
    state
        .iter()
        .filter(|(_, c)| c.norm_sqr() > 0.0)
        .map(|(n, c)| c.norm_sqr() * log_falling(n + l, l).exp())
        .sum()
}

/// `⟨(N - ⟨N⟩)ᵐ⟩` from the photon-number distribution.
pub fn central_number_moment(state: &QuditState, m: u32) -> f64 {
    let mean = factorial_moment(state, 1);
    state
        .iter()
        .map(|(n, c)| c.norm_sqr() * (n as f64 - mean).powi(m as i32))
        .sum()
}

/// Memo of `⟨a†ᵏ aˡ⟩` for a single state. Concurrent readers, serialized
/// inserts; a miss simply recomputes.
#[derive(Debug)]
pub struct MomentTable {
    state: QuditState,
    fingerprint: u64,
    entries: RwLock<HashMap<MomentOrder, Complex64>>,
}

impl MomentTable {
    pub fn new(state: &QuditState) -> Self {
        MomentTable {
            fingerprint: state.fingerprint(),
            state: state.clone(),
            entries: RwLock::new(HashMap::new()),
        }
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn state(&self) -> &QuditState {
        &self.state
    }

    pub fn get(&self, k: u32, l: u32) -> Complex64 {
        let key = MomentOrder::new(k, l);
        if let Some(v) = self.entries.read().expect("moment table poisoned").get(&key) {
            return *v;
        }
        let v = moment(&self.state, k, l);
        self.entries
            .write()
            .expect("moment table poisoned")
            .entry(key)
            .or_insert(v);
        v
    }

    pub fn factorial(&self, m: u32) -> f64 {
        self.get(m, m).re
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("moment table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
