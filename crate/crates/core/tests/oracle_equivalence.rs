mod common;

use common::{oracle_fixture, oracle_fixtures, Op};
use qudit_core::{add_photons, moment, QuditState};
use qudit_oracle::{exact_moment_oracle, expectation, rational, ExactState, Ladder};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
struct MomentFixture {
    state: String,
    m: u32,
    p: (i64, i64),
    q: (i64, i64),
    op: String,
    k: u32,
    l: u32,
    value: String,
}

const FIXTURE_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/moment_oracle.json");

fn parse_op(op: &str) -> Op {
    match op.split_once(' ') {
        Some(("add", n)) => Op::Add(n.parse().unwrap()),
        Some(("sub", n)) => Op::Sub(n.parse().unwrap()),
        _ => Op::None,
    }
}

fn fixture_specs() -> Vec<(u32, (i64, i64), (i64, i64), &'static str, u32, u32)> {
    vec![
        (2, (1, 2), (0, 1), "none", 1, 1),
        (4, (1, 2), (-1, 100), "none", 2, 2),
        (4, (1, 2), (-1, 100), "none", 1, 3),
        (10, (4, 5), (-1, 100), "add 1", 1, 1),
        (10, (4, 5), (-1, 100), "add 1", 2, 0),
        (10, (4, 5), (-1, 100), "sub 3", 3, 3),
        (10, (4, 5), (1, 100), "sub 1", 0, 2),
        (6, (1, 5), (1, 100), "add 2", 4, 4),
    ]
}

fn render(m: u32, p: (i64, i64), q: (i64, i64), op: &str, k: u32, l: u32) -> MomentFixture {
    let fx = oracle_fixture(m, p, q, parse_op(op)).unwrap();
    let value = exact_moment_oracle(&fx.exact, k, l).unwrap().to_decimal(30);
    MomentFixture {
        state: format!("ngbs(M={m},p={}/{},q={}/{})", p.0, p.1, q.0, q.1),
        m,
        p,
        q,
        op: op.to_string(),
        k,
        l,
        value,
    }
}

#[test]
fn frozen_fixtures_match_oracle_and_library() {
    if std::env::var_os("QUDIT_REGEN_FIXTURES").is_some() {
        let all: Vec<MomentFixture> =
            fixture_specs().into_iter().map(|(m, p, q, op, k, l)| render(m, p, q, op, k, l)).collect();
        std::fs::write(FIXTURE_PATH, serde_json::to_string_pretty(&all).unwrap() + "\n").unwrap();
    }
    let text = std::fs::read_to_string(FIXTURE_PATH).expect("fixture file present");
    let fixtures: Vec<MomentFixture> = serde_json::from_str(&text).unwrap();
    assert_eq!(fixtures.len(), fixture_specs().len());
    for f in &fixtures {
        let again = render(f.m, f.p, f.q, &f.op, f.k, f.l);
        assert_eq!(again.value, f.value, "oracle drifted for {} {} k={} l={}", f.state, f.op, f.k, f.l);
        let fx = oracle_fixture(f.m, f.p, f.q, parse_op(&f.op)).unwrap();
        let exact: f64 = f.value.parse().unwrap();
        let got = moment(&fx.float, f.k, f.l);
        assert!((got.re - exact).abs() <= 1e-12 * exact.abs(), "{} {}: {} vs {}", f.state, f.op, got.re, exact);
        assert_eq!(got.im, 0.0);
    }
}

#[test]
fn binomial_mean_fixture_is_one() {
    let fx = oracle_fixture(2, (1, 2), (0, 1), Op::None).unwrap();
    let v = exact_moment_oracle(&fx.exact, 1, 1).unwrap();
    assert_eq!(v.as_rational(), Some(rational(1, 1)));
}

#[test]
fn every_fixture_state_all_orders_to_five() {
    let fixtures = oracle_fixtures();
    assert!(fixtures.len() >= 20);
    for fx in &fixtures {
        for k in 0..=5 {
            for l in 0..=5 {
                let exact = exact_moment_oracle(&fx.exact, k, l).unwrap().to_f64();
                let got = moment(&fx.float, k, l);
                assert!(
                    (got.re - exact).abs() <= 1e-12 * exact.abs(),
                    "{} k={k} l={l}: {} vs {exact}",
                    fx.label,
                    got.re
                );
                assert_eq!(got.im, 0.0);
            }
        }
    }
}

#[test]
fn photon_addition_commutes_with_moment_pipeline() {
    // ⟨N⟩ of a†ψ/‖a†ψ‖ is ⟨a a†a a†⟩_ψ / ⟨a a†⟩_ψ
    for (m, p, q) in [(4, (1, 2), (-1, 100)), (6, (4, 5), (1, 100)), (10, (4, 5), (-1, 100))] {
        let fx = oracle_fixture(m, p, q, Op::None).unwrap();
        let num = expectation(&fx.exact, &[Ladder::Annihilate, Ladder::Create, Ladder::Annihilate, Ladder::Create])
            .unwrap()
            .to_f64();
        let den = expectation(&fx.exact, &[Ladder::Annihilate, Ladder::Create]).unwrap().to_f64();
        let got = moment(&add_photons(&fx.float, 1), 1, 1).re;
        assert!((got - num / den).abs() <= 1e-12 * got, "{}: {got} vs {}", fx.label, num / den);
    }
}

#[test]
fn fock_states_against_oracle() {
    for n in 0..10u32 {
        let exact = ExactState::fock(n);
        let float = QuditState::fock(n);
        for k in 0..=5 {
            for l in 0..=5 {
                let e = exact_moment_oracle(&exact, k, l).unwrap().to_f64();
                let g = moment(&float, k, l).re;
                assert!((g - e).abs() <= 1e-12 * e.abs(), "n={n} k={k} l={l}");
            }
        }
    }
}
