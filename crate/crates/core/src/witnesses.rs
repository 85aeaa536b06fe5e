//! Higher-order nonclassicality witnesses. Each returns a real scalar whose
//! negativity flags the corresponding nonclassical effect.

use serde::{Deserialize, Serialize};

use crate::fock::QuditState;
use crate::moments::{antinormal_moment, central_number_moment, MomentTable};
use crate::specfun::{binomial, stirling2_row};

/// Default order for higher-order antibunching.
pub const DEFAULT_HOA_ORDER: u32 = 3;
/// Default order for Hillery amplitude-powered squeezing.
pub const DEFAULT_HOS_ORDER: u32 = 2;
/// Default order for higher-order sub-Poissonian statistics.
pub const DEFAULT_HOSPS_ORDER: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Hoa,
    HosHillery,
    HospsLiteral,
    HospsDefinition,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub kind: WitnessKind,
    pub order: u32,
    pub value: f64,
    pub nonclassical: bool,
}

impl WitnessResult {
    fn new(kind: WitnessKind, order: u32, value: f64) -> Self {
        WitnessResult { kind, order, value, nonclassical: value < 0.0 }
    }
}

/// `D(l) = ⟨a†^{l+1} a^{l+1}⟩ - ⟨a†a⟩^{l+1}`.
pub fn hoa(state: &QuditState, l: u32) -> WitnessResult {
    assert!(l >= 1, "antibunching order must be at least 1");
    let table = MomentTable::new(state);
    WitnessResult::new(WitnessKind::Hoa, l, antibunching_d(&table, l + 1))
}

/// `⟨a†ᵏ aᵏ⟩ - ⟨N⟩ᵏ`, i.e. `D(k-1)`; zero at `k = 0`.
fn antibunching_d(table: &MomentTable, k: u32) -> f64 {
    if k == 0 {
        return 0.0;
    }
    table.factorial(k) - table.factorial(1).powi(k as i32)
}

/// Hillery amplitude-powered squeezing
/// `A = (ΔY₁)² - ½|⟨[Y₁, Y₂]⟩|` with `Y₁ = (aˡ + a†ˡ)/2`,
/// `Y₂ = -i(aˡ - a†ˡ)/2`.
///
/// `⟨[Y₁, Y₂]⟩ = (i/2)⟨[aˡ, a†ˡ]⟩`, and the commutator is evaluated as
/// `⟨aˡa†ˡ⟩ - ⟨a†ˡaˡ⟩` with the anti-normal term taken from `‖a†ˡψ‖²`.
pub fn hos_hillery(state: &QuditState, l: u32) -> WitnessResult {
    assert!(l >= 1, "squeezing order must be at least 1");
    let table = MomentTable::new(state);
    let normal = table.factorial(l);
    let antinormal = antinormal_moment(state, l);
    let a_pow = table.get(0, l);
    let a_pow2 = table.get(0, 2 * l);
    let y1_sq = (2.0 * a_pow2.re + normal + antinormal) / 4.0;
    let y1_mean = a_pow.re;
    let variance = y1_sq - y1_mean * y1_mean;
    let commutator = antinormal - normal;
    let value = variance - 0.25 * commutator.abs();
    WitnessResult::new(WitnessKind::HosHillery, l, value)
}

/// Stirling-number form
/// `D_h(l-1) = Σ_{e=0}^{l} Σ_{k=0}^{e} S2(e,k) C(l,e) (-1)^e D(k-1) ⟨N⟩^{l-e}`
/// evaluated term by term, with `D(-1) = 0`.
pub fn hosps_literal(state: &QuditState, l: u32) -> WitnessResult {
    assert!(l >= 2, "sub-Poissonian order must be at least 2");
    let table = MomentTable::new(state);
    let mean = table.factorial(1);
    let d: Vec<f64> = (0..=l).map(|k| antibunching_d(&table, k)).collect();
    let mut value = 0.0;
    for e in 0..=l {
        let sign = if e % 2 == 0 { 1.0 } else { -1.0 };
        let outer = binomial(l, e).to_f64() * sign * mean.powi((l - e) as i32);
        let inner: f64 = stirling2_row(e)
            .iter()
            .enumerate()
            .map(|(k, s)| s.to_f64() * d[k])
            .sum();
        value += outer * inner;
    }
    WitnessResult::new(WitnessKind::HospsLiteral, l, value)
}

/// `⟨(N - ⟨N⟩)ˡ⟩ - μ_l(⟨N⟩)` where `μ_l(λ)` is the `l`-th central moment of
/// a Poisson distribution with mean `λ`.
pub fn hosps_definition(state: &QuditState, l: u32) -> WitnessResult {
    assert!(l >= 2, "sub-Poissonian order must be at least 2");
    let mean = MomentTable::new(state).factorial(1);
    let value = central_number_moment(state, l) - poisson_central_moment(mean, l);
    WitnessResult::new(WitnessKind::HospsDefinition, l, value)
}

/// Raw Poisson moment `E[Nᵐ] = Σ_k S2(m,k) λᵏ` (Touchard polynomial).
pub fn poisson_raw_moment(lambda: f64, m: u32) -> f64 {
    stirling2_row(m)
        .iter()
        .enumerate()
        .map(|(k, s)| s.to_f64() * lambda.powi(k as i32))
        .sum()
}

/// Central Poisson moment `E[(N - λ)ˡ]` by binomial expansion of the raw
/// moments.
pub fn poisson_central_moment(lambda: f64, l: u32) -> f64 {
    (0..=l)
        .map(|j| binomial(l, j).to_f64() * poisson_raw_moment(lambda, j) * (-lambda).powi((l - j) as i32))
        .sum()
}

/// Evaluates `kind` at `order`.
pub fn evaluate(kind: WitnessKind, state: &QuditState, order: u32) -> WitnessResult {
    match kind {
        WitnessKind::Hoa => hoa(state, order),
        WitnessKind::HosHillery => hos_hillery(state, order),
        WitnessKind::HospsLiteral => hosps_literal(state, order),
        WitnessKind::HospsDefinition => hosps_definition(state, order),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{binomial_state, make_qudit, make_real_qudit};
    use num_complex::Complex64;
    use proptest::prelude::*;

    #[test]
    fn hoa_examples() {
        assert_eq!(hoa(&QuditState::fock(1), 1).value, -1.0);
        let r = hoa(&QuditState::fock(1), 3);
        assert_eq!(r.value, -1.0);
        assert!(r.nonclassical);
        // D(1) = -M p² for a binomial state
        let b = binomial_state(10, 0.5).unwrap();
        assert!((hoa(&b, 1).value + 2.5).abs() < 1e-12);
    }

    #[test]
    fn hillery_fock_values() {
        assert!(hos_hillery(&QuditState::fock(0), 2).value.abs() < 1e-15);
        assert!(hos_hillery(&QuditState::fock(1), 2).value.abs() < 1e-15);
        assert!((hos_hillery(&QuditState::fock(2), 2).value - 1.0).abs() < 1e-14);
        assert!(!hos_hillery(&QuditState::fock(0), 2).nonclassical);
    }

    #[test]
    fn hosps_fock_values() {
        let two = QuditState::fock(2);
        // literal form, hand expansion with D(1) = -2, D(2) = -8, <N> = 2
        assert!((hosps_literal(&two, 3).value - 2.0).abs() < 1e-12);
        assert!((hosps_definition(&two, 3).value + 2.0).abs() < 1e-12);
        assert_eq!(hosps_literal(&QuditState::fock(0), 3).value, 0.0);
        for n in 0..8 {
            let v = hosps_definition(&QuditState::fock(n), 2).value;
            assert!((v + n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn poisson_moments() {
        // variance and third central moment both equal λ, fourth is 3λ² + λ
        for &lam in &[0.0, 0.3, 2.0, 7.5] {
            assert!((poisson_central_moment(lam, 2) - lam).abs() < 1e-12);
            assert!((poisson_central_moment(lam, 3) - lam).abs() < 1e-10);
            assert!((poisson_central_moment(lam, 4) - (3.0 * lam * lam + lam)).abs() < 1e-9);
        }
    }

    #[test]
    fn hillery_detects_amplitude_squared_squeezing() {
        // small |0> + ε|2> superposition squeezes a²
        let s = make_real_qudit(&[1.0, 0.0, 0.2], 0).unwrap();
        assert!(hos_hillery(&s, 2).nonclassical);
    }

    fn arb_state() -> impl Strategy<Value = QuditState> {
        (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..9), 0u32..5).prop_filter_map(
            "nonzero",
            |(v, off)| {
                let a: Vec<Complex64> = v.into_iter().map(|(x, y)| Complex64::new(x, y)).collect();
                make_qudit(&a, off).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn second_order_forms_coincide(s in arb_state()) {
            let d1 = hoa(&s, 1).value;
            let scale = 1.0 + d1.abs() + MomentTable::new(&s).factorial(2);
            prop_assert!((hosps_literal(&s, 2).value - d1).abs() <= 1e-12 * scale);
            prop_assert!((hosps_definition(&s, 2).value - d1).abs() <= 1e-12 * scale);
        }

        #[test]
        fn literal_is_signed_definition(s in arb_state(), l in 2u32..7) {
            // the Stirling sum expands to (-1)^l times the central-moment difference
            let lit = hosps_literal(&s, l).value;
            let def = hosps_definition(&s, l).value;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            let scale = 1.0 + crate::moments::number_moment(&s, l);
            prop_assert!((lit - sign * def).abs() <= 1e-9 * scale);
        }

        #[test]
        fn hoa_ignores_global_phase(s in arb_state(), phase in 0.0f64..6.3, l in 1u32..5) {
            let rot = Complex64::from_polar(1.0, phase);
            let amps: Vec<Complex64> = s.amplitudes().iter().map(|c| c * rot).collect();
            let t = make_qudit(&amps, s.offset()).unwrap();
            let (a, b) = (hoa(&s, l).value, hoa(&t, l).value);
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
        }

        #[test]
        fn flag_matches_sign(s in arb_state(), l in 2u32..5) {
            for kind in [WitnessKind::Hoa, WitnessKind::HosHillery, WitnessKind::HospsLiteral, WitnessKind::HospsDefinition] {
                let r = evaluate(kind, &s, l);
                prop_assert_eq!(r.nonclassical, r.value < 0.0);
                prop_assert!(r.value.is_finite());
            }
        }
    }
}
