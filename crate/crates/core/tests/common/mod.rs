#![allow(dead_code)]

use std::f64::consts::PI;

use qudit_core::{add_photons, make_qudit, ngbs, subtract_photons, Complex64, NgbsParams, QuditState};
use qudit_oracle::{rational, ExactState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Normalized Hermite functions `⟨x|n⟩`, `n = 0..=n_max`, from the
/// orthonormal three-term recurrence.
pub fn hermite_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    out[0] = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if n_max >= 1 {
        out[1] = std::f64::consts::SQRT_2 * x * out[0];
    }
    for n in 1..n_max {
        let nf = n as f64;
        out[n + 1] = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
    }
    out
}

pub fn wavefunction(state: &QuditState, x: f64) -> Complex64 {
    let phi = hermite_functions(state.max_index() as usize, x);
    state.iter().map(|(n, c)| c * phi[n as usize]).sum()
}

/// `W(x,p) = (1/π) ∫ e^{2ipy} ψ*(x+y) ψ(x-y) dy` by the trapezoidal rule,
/// which is spectrally accurate for this smooth, Gaussian-decaying integrand.
pub fn wigner_integral_oracle(state: &QuditState, x: f64, p: f64) -> f64 {
    let half_width = 16.0 + x.abs();
    let h = 0.01;
    let steps = (half_width / h).round() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in -steps..=steps {
        let y = i as f64 * h;
        let phase = Complex64::from_polar(1.0, 2.0 * p * y);
        acc += phase * wavefunction(state, x + y).conj() * wavefunction(state, x - y);
    }
    acc.re * h / PI
}

pub fn table_base() -> QuditState {
    ngbs(&NgbsParams::new(10, 0.8, -0.01)).unwrap()
}

/// States used by the phase-space checks.
pub fn phase_space_fixtures() -> Vec<(String, QuditState)> {
    let c = |re, im| Complex64::new(re, im);
    let base = table_base();
    let mut v = vec![
        ("vacuum".to_string(), QuditState::fock(0)),
        ("fock1".to_string(), QuditState::fock(1)),
        ("fock3".to_string(), QuditState::fock(3)),
        ("cat01".to_string(), make_qudit(&[c(1.0, 0.0), c(1.0, 0.0)], 0).unwrap()),
        ("cat0i1".to_string(), make_qudit(&[c(1.0, 0.0), c(0.0, 1.0)], 0).unwrap()),
        (
            "complex5@2".to_string(),
            make_qudit(&[c(0.3, -0.2), c(-0.5, 0.4), c(0.1, 0.7), c(0.0, -0.3), c(0.6, 0.1)], 2).unwrap(),
        ),
        ("ngbs".to_string(), base.clone()),
    ];
    for r in [1, 3, 5] {
        v.push((format!("add{r}"), add_photons(&base, r)));
    }
    for t in [1, 3, 5] {
        v.push((format!("sub{t}"), subtract_photons(&base, t).unwrap()));
    }
    v
}

/// Seeded random complex states of dimension 1..=10 and offset 0..=4.
pub fn random_states(count: usize, seed: u64) -> Vec<QuditState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dim = rng.gen_range(1..=10);
            let offset = rng.gen_range(0..=4);
            loop {
                let amps: Vec<Complex64> =
                    (0..dim).map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
                if let Ok(s) = make_qudit(&amps, offset) {
                    break s;
                }
            }
        })
        .collect()
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Rational generalized-binomial fixture and its floating-point twin.
#[derive(Debug, Clone)]
pub struct OracleFixture {
    pub label: String,
    pub exact: ExactState,
    pub float: QuditState,
}

#[derive(Debug, Clone, Copy)]
pub enum Op {
    None,
    Add(u32),
    Sub(u32),
}

pub fn oracle_fixture(m: u32, p: (i64, i64), q: (i64, i64), op: Op) -> Option<OracleFixture> {
    let exact = ExactState::ngbs(m, &rational(p.0, p.1), &rational(q.0, q.1)).ok()?;
    let params = NgbsParams::new(m, p.0 as f64 / p.1 as f64, q.0 as f64 / q.1 as f64);
    let float = ngbs(&params).ok()?;
    let (exact, float) = match op {
        Op::None => (exact, float),
        Op::Add(r) => (exact.add_photons(r), add_photons(&float, r)),
        Op::Sub(t) => (exact.subtract_photons(t).ok()?, subtract_photons(&float, t).ok()?),
    };
    let label = format!("ngbs(M={m},p={}/{},q={}/{}) {op:?}", p.0, p.1, q.0, q.1);
    Some(OracleFixture { label, exact, float })
}

/// The dimension ≤ 12 lattice used for oracle equivalence.
pub fn oracle_fixtures() -> Vec<OracleFixture> {
    let mut out = Vec::new();
    for m in [2u32, 4, 6, 8, 10] {
        for p in [(1, 5), (1, 2), (4, 5)] {
            for q in [(-1, 100), (0, 1), (1, 100)] {
                for op in [Op::None, Op::Add(1), Op::Add(2), Op::Sub(1), Op::Sub(3)] {
                    if let Some(f) = oracle_fixture(m, p, q, op) {
                        if f.float.len() <= 12 {
                            out.push(f);
                        }
                    }
                }
            }
        }
    }
    out
}
