// SPDX-License-Identifier: Apache-2.0

//! Continuous-time quantum walk `U(t) = exp(-i A t)` on the unitary Cayley graph.
//!
//! The spectral path synthesizes `U(t) = sum_d exp(-i lambda_d t) E_d` from the
//! integer spectrum. Since `U(t)` is circulant it is determined by its first
//! row, and grouping indices by eigenvalue turns each entry into a short sum
//! over distinct eigenvalues weighted by integer class characters.
//!
//! The oracle path exponentiates `-i t A` directly (Taylor series with scaling
//! and squaring) and never touches the spectrum.

use std::f64::consts::TAU;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::Serialize;

use crate::cayley::UnitaryCayleyGraph;
use crate::error::{Error, Result};
use crate::spectral::CirculantSpectrum;
use crate::time::Time;

/// Largest graph the matrix exponential oracle accepts.
pub const ORACLE_MAX_N: usize = 64;
const TAYLOR_TERM_TOL: f64 = 1e-16;
const TAYLOR_MAX_TERMS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Spectral,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionSnapshot {
    pub n: usize,
    pub t: f64,
    pub method: Method,
    #[serde(serialize_with = "crate::json::complex_rows")]
    pub matrix: Array2<Complex64>,
}

impl EvolutionSnapshot {
    pub fn column(&self, u: usize) -> Array1<Complex64> {
        self.matrix.column(u).to_owned()
    }

    /// Largest entry of `|U U^* - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.matrix.dot(&self.matrix.t().mapv(|z| z.conj()));
        max_abs_from_identity(&prod)
    }
}

pub(crate) fn max_abs_from_identity(m: &Array2<Complex64>) -> f64 {
    m.indexed_iter()
        .map(|((i, j), z)| {
            let target = if i == j { 1.0 } else { 0.0 };
            (z - target).norm()
        })
        .fold(0.0, f64::max)
}

/// Precomputed first-row synthesis for one spectrum.
///
/// `first_row(t)[k] = (1/n) sum_c exp(-i lambda_c t) chi_c(k)` where `chi_c`
/// is the integer character of eigenvalue class `c`, so `U(t)[u][v]` equals
/// `first_row(t)[(v - u) mod n]`.
#[derive(Debug, Clone)]
pub struct Synthesis<'a> {
    spec: &'a CirculantSpectrum,
}

impl<'a> Synthesis<'a> {
    pub fn new(spec: &'a CirculantSpectrum) -> Self {
        Self { spec }
    }

    pub fn spectrum(&self) -> &CirculantSpectrum {
        self.spec
    }

    fn phases(&self, t: Time) -> Vec<Complex64> {
        self.spec.classes().iter().map(|c| t.phase(c.lambda)).collect()
    }

    pub fn first_row(&self, t: Time) -> Vec<Complex64> {
        let n = self.spec.n();
        let phases = self.phases(t);
        let scale = 1.0 / n as f64;
        (0..n)
            .map(|k| {
                phases
                    .iter()
                    .enumerate()
                    .map(|(c, z)| z * self.spec.class_character(c)[k] as f64)
                    .sum::<Complex64>()
                    * scale
            })
            .collect()
    }

    /// Single entry at offset `k = (v - u) mod n`.
    pub fn entry(&self, t: Time, k: usize) -> Complex64 {
        let n = self.spec.n();
        self.spec
            .classes()
            .iter()
            .enumerate()
            .map(|(c, class)| t.phase(class.lambda) * self.spec.class_character(c)[k % n] as f64)
            .sum::<Complex64>()
            / n as f64
    }

    /// `U(t) e_u`.
    pub fn column(&self, t: Time, u: usize) -> Array1<Complex64> {
        let n = self.spec.n();
        let row = self.first_row(t);
        // U[w][u] = row[(u - w) mod n]
        Array1::from_shape_fn(n, |w| row[(u + n - w) % n])
    }
}

/// `U(t) = sum_d exp(-i lambda_d t) E_d`.
pub fn evolve_spectral(spec: &CirculantSpectrum, t: impl Into<Time>) -> EvolutionSnapshot {
    let t = t.into();
    let n = spec.n();
    let row = Synthesis::new(spec).first_row(t);
    EvolutionSnapshot {
        n,
        t: t.value(),
        method: Method::Spectral,
        matrix: Array2::from_shape_fn((n, n), |(u, v)| row[(v + n - u) % n]),
    }
}

/// `exp(-i t A)` by truncated Taylor series with scaling and squaring.
pub fn evolve_oracle(g: &UnitaryCayleyGraph, t: impl Into<Time>) -> Result<EvolutionSnapshot> {
    let t = t.into().value();
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(Error::OracleScale {
            n,
            max: ORACLE_MAX_N,
        });
    }
    let degree = g.connection_set().len() as f64;
    // ||t A||_1 = |t| * degree for a regular graph
    let norm = t.abs() * degree;
    let mut squarings = 0i32;
    while norm / 2f64.powi(squarings) > 0.5 {
        squarings += 1;
    }
    let scale = t / 2f64.powi(squarings);
    let x = g
        .adjacency()
        .mapv(|a| Complex64::new(0.0, -scale * f64::from(a)));

    let mut sum = Array2::<Complex64>::eye(n);
    let mut term = Array2::<Complex64>::eye(n);
    let mut converged = false;
    for k in 1..=TAYLOR_MAX_TERMS {
        term = term.dot(&x) / k as f64;
        sum += &term;
        if term.iter().map(|z| z.norm()).fold(0.0, f64::max) < TAYLOR_TERM_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::SeriesNotConverged(TAYLOR_MAX_TERMS));
    }
    for _ in 0..squarings {
        sum = sum.dot(&sum);
    }
    Ok(EvolutionSnapshot {
        n,
        t,
        method: Method::Oracle,
        matrix: sum,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferAmplitudes {
    pub u: usize,
    pub v: usize,
    pub t: f64,
    /// `U(t)[u][u]`
    pub alpha: Complex64,
    /// `U(t)[v][u]`
    pub beta: Complex64,
}

/// Return amplitude at `u` and transfer amplitude to `v`, without building
/// `U(t)`.
pub fn amplitudes(
    spec: &CirculantSpectrum,
    u: usize,
    v: usize,
    t: impl Into<Time>,
) -> Result<TransferAmplitudes> {
    spec.check_pair(u, v)?;
    let t = t.into();
    let n = spec.n();
    let synth = Synthesis::new(spec);
    Ok(TransferAmplitudes {
        u,
        v,
        t: t.value(),
        alpha: synth.entry(t, 0),
        beta: synth.entry(t, (u + n - v) % n),
    })
}

/// `g = gcd_d (lambda_d - lambda_0)`; the walk is scalar exactly at multiples
/// of `2 pi / g`.
pub fn period_divisor(spec: &CirculantSpectrum) -> u64 {
    let l0 = spec.eigenvalue(0);
    spec.eigenvalues()
        .iter()
        .map(|&l| (l - l0).unsigned_abs())
        .fold(0, crate::numtheory::gcd)
}

/// Smallest `T > 0` with `U(T)` a unimodular multiple of the identity.
pub fn minimal_period(spec: &CirculantSpectrum) -> Time {
    let g = period_divisor(spec);
    Time::pi_multiple(2, g.max(1)).expect("nonzero denominator")
}

/// `|U(t)[v][u]|^2` for every `v`, sampled on `samples` uniform points of
/// `[0, 2 pi)`.
pub fn probability_profile(spec: &CirculantSpectrum, u: usize, samples: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    spec.check_vertex(u)?;
    let synth = Synthesis::new(spec);
    Ok((0..samples)
        .map(|i| {
            let t = TAU * i as f64 / samples as f64;
            let col = synth.column(Time::Radians(t), u);
            (t, col.iter().map(|z| z.norm_sqr()).collect())
        })
        .collect())
}
