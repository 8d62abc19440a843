// SPDX-License-Identifier: Apache-2.0

//! Integer spectrum of the unitary Cayley graph and its spectral idempotents.
//!
//! A circulant on `Z_n` is diagonalized by the characters
//! `v_d = n^{-1/2} (1, w^d, w^{2d}, ...)` with `w = exp(2 pi i / n)`, so the
//! per-index idempotent `E_d = v_d v_d^*` has entries `w^{(v-u)d} / n`. Indices
//! that share an eigenvalue are summed into the true eigenprojector `F_lambda`;
//! strong cospectrality and eigenvalue supports are defined on those.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cayley::CirculantGraph;
use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, gcd, ramanujan_sum};

/// Coordinate tolerance for comparing projected basis vectors.
pub const PROJECTION_TOL: f64 = 1e-10;

/// `exp(2 pi i k / n)` with `k` reduced mod `n` first.
pub fn root_of_unity(k: i64, n: usize) -> Complex64 {
    let k = k.rem_euclid(n as i64);
    Complex64::from_polar(1.0, TAU * k as f64 / n as f64)
}

/// One distinct eigenvalue and the character indices carrying it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenClass {
    pub lambda: i64,
    pub indices: Vec<usize>,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CirculantSpectrum {
    n: usize,
    #[serde(rename = "eigenvalues")]
    eigenvalue_by_index: Vec<i64>,
    classes: Vec<EigenClass>,
    /// `characters[c][k] = sum_{d in class c} w^{kd}`, an integer because each
    /// class is a union of gcd classes and those sum to Ramanujan sums.
    #[serde(skip)]
    characters: Vec<Vec<i64>>,
}

impl CirculantSpectrum {
    /// Group per-index integer eigenvalues of a circulant on `Z_n`. Classes
    /// are ordered by decreasing eigenvalue. The eigenvalue must depend only
    /// on `gcd(d, n)`.
    pub(crate) fn from_eigenvalues(eigenvalue_by_index: Vec<i64>) -> Result<Self> {
        let n = eigenvalue_by_index.len();
        if n < 2 {
            return Err(Error::TooFewVertices(n as u64));
        }
        let mut grouped: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (d, &lambda) in eigenvalue_by_index.iter().enumerate() {
            grouped.entry(lambda).or_default().push(d);
        }
        let classes = grouped
            .into_iter()
            .rev()
            .map(|(lambda, indices)| EigenClass {
                lambda,
                multiplicity: indices.len(),
                indices,
            })
            .collect::<Vec<_>>();
        let characters = classes
            .iter()
            .map(|c| class_character(n, &c.indices))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n,
            eigenvalue_by_index,
            classes,
            characters,
        })
    }

    /// Integer character sums of class `c` at every offset `k`.
    pub fn class_character(&self, c: usize) -> &[i64] {
        &self.characters[c]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[i64] {
        &self.eigenvalue_by_index
    }

    pub fn eigenvalue(&self, d: usize) -> i64 {
        self.eigenvalue_by_index[d]
    }

    pub fn classes(&self) -> &[EigenClass] {
        &self.classes
    }

    pub fn class_of(&self, lambda: i64) -> Option<&EigenClass> {
        self.classes.iter().find(|c| c.lambda == lambda)
    }

    pub fn multiplicity(&self, lambda: i64) -> usize {
        self.class_of(lambda).map_or(0, |c| c.multiplicity)
    }

    pub fn lambda_max(&self) -> u64 {
        self.eigenvalue_by_index
            .iter()
            .map(|l| l.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex >= self.n {
            Err(Error::VertexOutOfRange { vertex, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            Err(Error::SameVertex(u))
        } else {
            Ok(())
        }
    }

    /// `F e_u` for the eigenvalue class at position `c`, entry `w` equal to
    /// `sum_{d in class} w^{(u-w)d} / n`. Real because classes are closed
    /// under `d -> n - d`.
    pub fn project_basis_vector(&self, c: usize, u: usize) -> Array1<f64> {
        let n = self.n;
        let row = &self.characters[c];
        Array1::from_shape_fn(n, |w| row[(u + n - w) % n] as f64 / n as f64)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serialization")
    }
}

fn class_character(n: usize, indices: &[usize]) -> Result<Vec<i64>> {
    let mut by_gcd: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in indices {
        *by_gcd.entry(gcd(d as u64, n as u64) as usize).or_default() += 1;
    }
    let mut row = vec![0i64; n];
    for (g, count) in by_gcd {
        // {d : gcd(d, n) = g} = g * units(n / g)
        let m = n / g;
        debug_assert_eq!(count as u64, euler_phi(m as u64)?);
        for (k, slot) in row.iter_mut().enumerate() {
            *slot += ramanujan_sum((k % m) as u64, m as u64)?;
        }
    }
    Ok(row)
}

/// Spectrum of the unitary Cayley graph on `Z_n`: `lambda_d = c_n(d)`.
pub fn spectrum_via_ramanujan(n: usize) -> Result<CirculantSpectrum> {
    if n < 2 {
        return Err(Error::TooFewVertices(n as u64));
    }
    let eigenvalues = (0..n as u64)
        .map(|d| ramanujan_sum(d, n as u64))
        .collect::<Result<Vec<_>>>()?;
    CirculantSpectrum::from_eigenvalues(eigenvalues)
}

/// Floating point character sums `lambda_d = sum_{s in S} w^{ds}`.
pub fn spectrum_via_character_sum(g: &CirculantGraph) -> Vec<Complex64> {
    let n = g.n();
    (0..n)
        .map(|d| {
            g.connection_set()
                .iter()
                .map(|&s| root_of_unity((d * s) as i64, n))
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectorLabel {
    Index(usize),
    Eigenvalue(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralIdempotent {
    pub n: usize,
    pub label: ProjectorLabel,
    pub matrix: Array2<Complex64>,
}

impl SpectralIdempotent {
    pub fn trace(&self) -> Complex64 {
        self.matrix.diag().sum()
    }
}

fn class_matrix(n: usize, indices: &[usize]) -> Array2<Complex64> {
    let scale = 1.0 / n as f64;
    // entries depend only on (v - u) mod n
    let by_offset: Vec<Complex64> = (0..n)
        .map(|k| {
            indices
                .iter()
                .map(|&d| root_of_unity((k * d) as i64, n))
                .sum::<Complex64>()
                * scale
        })
        .collect();
    Array2::from_shape_fn((n, n), |(u, v)| by_offset[(v + n - u) % n])
}

/// Per-index idempotent `E_d` with entries `w^{(v-u)d} / n`.
pub fn idempotent(n: usize, d: usize) -> Result<SpectralIdempotent> {
    if n == 0 {
        return Err(Error::NonPositive { what: "n" });
    }
    if d >= n {
        return Err(Error::IndexOutOfRange {
            index: d as u64,
            bound: n as u64,
        });
    }
    Ok(SpectralIdempotent {
        n,
        label: ProjectorLabel::Index(d),
        matrix: class_matrix(n, &[d]),
    })
}

/// Eigenprojector `F_lambda = sum_{d : lambda_d = lambda} E_d`.
pub fn eigenvalue_projector(spec: &CirculantSpectrum, lambda: i64) -> Result<SpectralIdempotent> {
    let class = spec.class_of(lambda).ok_or(Error::NotAnEigenvalue(lambda))?;
    Ok(SpectralIdempotent {
        n: spec.n(),
        label: ProjectorLabel::Eigenvalue(lambda),
        matrix: class_matrix(spec.n(), &class.indices),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenvalueSupport {
    pub u: usize,
    pub v: usize,
    /// Eigenvalues with `F e_u = F e_v`, descending.
    pub plus: Vec<i64>,
    /// Eigenvalues with `F e_u = -F e_v`, descending.
    pub minus: Vec<i64>,
    /// Eigenvalues in the support of `e_u` that are in neither set.
    pub neither: Vec<i64>,
}

impl EigenvalueSupport {
    pub fn is_strongly_cospectral(&self) -> bool {
        self.neither.is_empty()
    }

    /// All `lambda - mu` for `lambda` in plus and `mu` in minus.
    pub fn cross_differences(&self) -> Vec<(i64, i64, i64)> {
        self.plus
            .iter()
            .flat_map(|&p| self.minus.iter().map(move |&m| (p, m, p - m)))
            .collect()
    }
}

fn max_abs_diff(a: &Array1<f64>, b: &Array1<f64>, sign: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y * sign).abs())
        .fold(0.0, f64::max)
}

pub fn eigenvalue_support(spec: &CirculantSpectrum, u: usize, v: usize) -> Result<EigenvalueSupport> {
    spec.check_pair(u, v)?;
    let mut support = EigenvalueSupport {
        u,
        v,
        plus: Vec::new(),
        minus: Vec::new(),
        neither: Vec::new(),
    };
    for (c, class) in spec.classes().iter().enumerate() {
        let fu = spec.project_basis_vector(c, u);
        if fu.iter().all(|z| z.abs() <= PROJECTION_TOL) {
            continue;
        }
        let fv = spec.project_basis_vector(c, v);
        if max_abs_diff(&fu, &fv, 1.0) <= PROJECTION_TOL {
            support.plus.push(class.lambda);
        } else if max_abs_diff(&fu, &fv, -1.0) <= PROJECTION_TOL {
            support.minus.push(class.lambda);
        } else {
            support.neither.push(class.lambda);
        }
    }
    Ok(support)
}

pub fn strongly_cospectral(spec: &CirculantSpectrum, u: usize, v: usize) -> Result<bool> {
    Ok(eigenvalue_support(spec, u, v)?.is_strongly_cospectral())
}
