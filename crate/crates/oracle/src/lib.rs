//! Exact reference values for ladder-operator expectations.
//!
//! States carry amplitudes of the form `±√w` with rational weights `w`.
//! Operators are assembled as dense truncated matrices of `a` and `a†` whose
//! entries are sums of square roots of integers, multiplied out exactly, and
//! the expectation is returned as a symbolic sum `Σ cᵢ √qᵢ` with rational
//! radicands. Nothing here shares code with the floating-point pipeline.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest truncated dimension the oracle will build.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    TooLarge(usize),
    InvalidParameters(String),
    ZeroState,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge(d) => write!(f, "truncated dimension {d} exceeds {MAX_DIM}"),
            OracleError::InvalidParameters(m) => write!(f, "invalid parameters: {m}"),
            OracleError::ZeroState => write!(f, "zero state"),
        }
    }
}

impl std::error::Error for OracleError {}

pub fn rational(num: i64, den: i64) -> BigRational {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Amplitude `sign · √weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtAmplitude {
    pub negative: bool,
    pub weight: BigRational,
}

/// Pure state with amplitudes `±√wₙ` on `|offset⟩, |offset+1⟩, ...` and
/// `Σ wₙ = 1` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactState {
    pub offset: u32,
    pub amplitudes: Vec<SqrtAmplitude>,
}

fn fact(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, k| a * k)
}

fn choose(n: u32, k: u32) -> BigInt {
    fact(n) / (fact(k) * fact(n - k))
}

fn rpow(x: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl ExactState {
    /// Normalizes `weights` (with optional signs) exactly.
    pub fn from_signed_weights(offset: u32, weights: Vec<(bool, BigRational)>) -> Result<Self, OracleError> {
        let total: BigRational = weights.iter().map(|(_, w)| w.clone()).sum();
        if total.is_zero() {
            return Err(OracleError::ZeroState);
        }
        if weights.iter().any(|(_, w)| w.is_negative()) {
            return Err(OracleError::InvalidParameters("negative weight".into()));
        }
        let amplitudes = weights
            .into_iter()
            .map(|(negative, w)| SqrtAmplitude { negative, weight: w / &total })
            .collect();
        Ok(ExactState { offset, amplitudes })
    }

    pub fn from_weights(offset: u32, weights: Vec<BigRational>) -> Result<Self, OracleError> {
        Self::from_signed_weights(offset, weights.into_iter().map(|w| (false, w)).collect())
    }

    pub fn fock(n: u32) -> Self {
        Self::from_weights(n, vec![BigRational::one()]).expect("unit weight")
    }

    /// Unnormalized generalized-binomial weights
    /// `p/(1+Mq) · C(M,n) · xₙ^{n-1} · (1-xₙ)^{M-n}`, `xₙ = (p+nq)/(1+Mq)`.
    pub fn ngbs_weights(m: u32, p: &BigRational, q: &BigRational) -> Result<Vec<BigRational>, OracleError> {
        let denom = BigRational::one() + q * BigRational::from_integer(BigInt::from(m));
        if !denom.is_positive() || !p.is_positive() {
            return Err(OracleError::InvalidParameters("need p > 0 and 1 + Mq > 0".into()));
        }
        let lead = p / &denom;
        (0..=m)
            .map(|n| {
                let x = (p + q * BigRational::from_integer(BigInt::from(n))) / &denom;
                if x.is_negative() || x > BigRational::one() {
                    return Err(OracleError::InvalidParameters(format!("fraction out of range at n = {n}")));
                }
                if x.is_zero() && n == 0 {
                    return Err(OracleError::InvalidParameters("zero fraction at n = 0".into()));
                }
                let one_minus = BigRational::one() - &x;
                Ok(&lead
                    * BigRational::from_integer(choose(m, n))
                    * rpow(&x, n as i32 - 1)
                    * num_traits::pow(one_minus, (m - n) as usize))
            })
            .collect()
    }

    pub fn ngbs(m: u32, p: &BigRational, q: &BigRational) -> Result<Self, OracleError> {
        Self::from_weights(0, Self::ngbs_weights(m, p, q)?)
    }

    /// `a†ʳ|ψ⟩`, renormalized.
    pub fn add_photons(&self, r: u32) -> Self {
        let w = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let n = self.offset + j as u32;
                let ratio = fact(n + r) / fact(n);
                (a.negative, &a.weight * BigRational::from_integer(ratio))
            })
            .collect();
        Self::from_signed_weights(self.offset + r, w).expect("creation never annihilates")
    }

    /// `aᵗ|ψ⟩`, renormalized.
    pub fn subtract_photons(&self, t: u32) -> Result<Self, OracleError> {
        let mut w = Vec::new();
        let mut offset = None;
        for (j, a) in self.amplitudes.iter().enumerate() {
            let n = self.offset + j as u32;
            if n < t {
                continue;
            }
            offset.get_or_insert(n - t);
            let ratio = fact(n) / fact(n - t);
            w.push((a.negative, &a.weight * BigRational::from_integer(ratio)));
        }
        match offset {
            Some(o) => Self::from_signed_weights(o, w),
            None => Err(OracleError::ZeroState),
        }
    }

    pub fn max_index(&self) -> u32 {
        self.offset + self.amplitudes.len() as u32 - 1
    }

    /// Amplitudes as `f64`, for building the floating-point counterpart.
    pub fn amplitudes_f64(&self) -> Vec<f64> {
        self.amplitudes
            .iter()
            .map(|a| {
                let v = a.weight.to_f64().unwrap_or(f64::NAN).sqrt();
                if a.negative { -v } else { v }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Create,
    Annihilate,
}

/// Dense square matrix whose entries are `Σ √rᵢ` over integer radicands.
#[derive(Debug, Clone)]
pub struct SqrtIntMatrix {
    dim: usize,
    entries: Vec<Vec<Vec<BigUint>>>,
}

impl SqrtIntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i][i].push(BigUint::one());
        }
        m
    }

    fn zeros(dim: usize) -> Self {
        SqrtIntMatrix { dim, entries: vec![vec![Vec::new(); dim]; dim] }
    }

    /// Truncated `a` (`⟨n-1|a|n⟩ = √n`) or `a†` (`⟨n+1|a†|n⟩ = √(n+1)`).
    pub fn ladder(op: Ladder, dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for n in 0..dim {
            match op {
                Ladder::Annihilate if n >= 1 => m.entries[n - 1][n].push(BigUint::from(n)),
                Ladder::Create if n + 1 < dim => m.entries[n + 1][n].push(BigUint::from(n + 1)),
                _ => {}
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                if self.entries[i][k].is_empty() {
                    continue;
                }
                for j in 0..self.dim {
                    for a in &self.entries[i][k] {
                        for b in &rhs.entries[k][j] {
                            out.entries[i][j].push(a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn entry(&self, i: usize, j: usize) -> &[BigUint] {
        &self.entries[i][j]
    }
}

/// Exact real number `Σ cᵢ √qᵢ`, radicands kept distinct.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SqrtSum {
    terms: Vec<(BigRational, BigInt)>,
}

impl SqrtSum {
    pub fn push(&mut self, radicand: BigRational, coeff: BigInt) {
        if radicand.is_zero() || coeff.is_zero() {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|(r, _)| *r == radicand) {
            t.1 += coeff;
        } else {
            self.terms.push((radicand, coeff));
        }
        self.terms.retain(|(_, c)| !c.is_zero());
    }

    pub fn terms(&self) -> &[(BigRational, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact rational value when every radicand is a perfect square.
    pub fn as_rational(&self) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (r, c) in &self.terms {
            let (num, den) = (r.numer().magnitude(), r.denom().magnitude());
            let (sn, sd) = (num.sqrt(), den.sqrt());
            if &(&sn * &sn) != num || &(&sd * &sd) != den {
                return None;
            }
            acc += Ratio::new(BigInt::from_biguint(Sign::Plus, sn), BigInt::from_biguint(Sign::Plus, sd))
                * BigRational::from_integer(c.clone());
        }
        Some(acc)
    }

    /// `round_down(value · 10^digits)` up to one unit per term.
    fn scaled(&self, digits: u32) -> BigInt {
        let scale = num_traits::pow(BigUint::from(10u32), 2 * digits as usize);
        self.terms
            .iter()
            .map(|(r, c)| {
                let num = r.numer().magnitude() * &scale;
                let root = (num / r.denom().magnitude()).sqrt();
                BigInt::from_biguint(Sign::Plus, root) * c
            })
            .sum()
    }

    /// Decimal expansion with `digits` digits after the point (last digit
    /// may be off by the number of terms).
    pub fn to_decimal(&self, digits: u32) -> String {
        let guard = 6;
        let v = self.scaled(digits + guard);
        let neg = v.is_negative();
        let v = v.magnitude() / num_traits::pow(BigUint::from(10u32), guard as usize);
        let s = v.to_string();
        let s = if s.len() <= digits as usize { format!("{}{}", "0".repeat(digits as usize + 1 - s.len()), s) } else { s };
        let (int, frac) = s.split_at(s.len() - digits as usize);
        format!("{}{}.{}", if neg && !v.is_zero() { "-" } else { "" }, int, frac)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(40).parse().expect("decimal parses")
    }
}

/// `⟨ψ| w₀ w₁ ⋯ w_{k-1} |ψ⟩` for an operator word read left to right.
pub fn expectation(state: &ExactState, word: &[Ladder]) -> Result<SqrtSum, OracleError> {
    let creations = word.iter().filter(|&&w| w == Ladder::Create).count();
    let dim = state.max_index() as usize + creations + 1;
    if dim > MAX_DIM {
        return Err(OracleError::TooLarge(dim));
    }
    let mut op = SqrtIntMatrix::identity(dim);
    for &w in word {
        op = op.mul(&SqrtIntMatrix::ladder(w, dim));
    }
    let mut out = SqrtSum::default();
    for (i, ai) in state.amplitudes.iter().enumerate() {
        let row = state.offset as usize + i;
        for (j, aj) in state.amplitudes.iter().enumerate() {
            let col = state.offset as usize + j;
            let sign = if ai.negative != aj.negative { -1 } else { 1 };
            for r in op.entry(row, col) {
                let radicand = &ai.weight * &aj.weight * BigRational::from_integer(BigInt::from(r.clone()));
                out.push(radicand, BigInt::from(sign));
            }
        }
    }
    Ok(out)
}

/// `⟨a†ᵏ aˡ⟩`.
pub fn exact_moment_oracle(state: &ExactState, k: u32, l: u32) -> Result<SqrtSum, OracleError> {
    let mut word = vec![Ladder::Create; k as usize];
    word.extend(std::iter::repeat_n(Ladder::Annihilate, l as usize));
    expectation(state, &word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fock_number() {
        let v = exact_moment_oracle(&ExactState::fock(1), 1, 1).unwrap();
        assert_eq!(v.as_rational(), Some(BigRational::one()));
        let v = exact_moment_oracle(&ExactState::fock(3), 2, 2).unwrap();
        assert_eq!(v.as_rational(), Some(rational(6, 1)));
        assert!(exact_moment_oracle(&ExactState::fock(3), 2, 1).unwrap().is_zero());
    }

    #[test]
    fn binomial_mean_is_mp() {
        let s = ExactState::ngbs(2, &rational(1, 2), &BigRational::zero()).unwrap();
        let v = exact_moment_oracle(&s, 1, 1).unwrap();
        assert_eq!(v.as_rational(), Some(BigRational::one()));
    }

    #[test]
    fn ngbs_weights_sum_to_one_exactly() {
        for m in 0..=8 {
            for (pn, pd) in [(1, 5), (1, 2), (4, 5)] {
                for (qn, qd) in [(-1, 100), (0, 1), (1, 100)] {
                    if let Ok(w) = ExactState::ngbs_weights(m, &rational(pn, pd), &rational(qn, qd)) {
                        let total: BigRational = w.into_iter().sum();
                        assert_eq!(total, BigRational::one(), "M={m} p={pn}/{pd} q={qn}/{qd}");
                    }
                }
            }
        }
    }

    #[test]
    fn off_diagonal_superposition() {
        // (|0⟩ + |1⟩)/√2: ⟨a⟩ = 1/2
        let s = ExactState::from_weights(0, vec![rational(1, 2), rational(1, 2)]).unwrap();
        let v = exact_moment_oracle(&s, 0, 1).unwrap();
        assert_eq!(v.as_rational(), Some(rational(1, 2)));
        // a a† = a† a + 1
        let lhs = expectation(&s, &[Ladder::Annihilate, Ladder::Create]).unwrap();
        assert_eq!(lhs.as_rational(), Some(rational(3, 2)));
    }

    #[test]
    fn decimal_rendering() {
        let mut s = SqrtSum::default();
        s.push(rational(2, 1), BigInt::from(1));
        assert_eq!(s.to_decimal(10), "1.4142135623");
        let mut n = SqrtSum::default();
        n.push(rational(1, 4), BigInt::from(-1));
        assert_eq!(n.to_decimal(3), "-0.500");
        assert_eq!(n.to_f64(), -0.5);
    }

    #[test]
    fn refuses_large_dimensions() {
        let s = ExactState::fock(60);
        assert_eq!(exact_moment_oracle(&s, 5, 5), Err(OracleError::TooLarge(66)));
    }

    #[test]
    fn subtraction_kills_low_support() {
        assert_eq!(ExactState::fock(0).subtract_photons(1), Err(OracleError::ZeroState));
        let s = ExactState::fock(2).add_photons(1).subtract_photons(1).unwrap();
        assert_eq!(s, ExactState::fock(2));
    }
}
