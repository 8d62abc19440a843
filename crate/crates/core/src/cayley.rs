// SPDX-License-Identifier: Apache-2.0

//! Unitary Cayley graphs on `Z_n` and general symmetric circulant graphs.

use std::collections::VecDeque;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{units_mod, Factorization};

/// Undirected circulant graph on `Z_n`: `u ~ v` iff `(v - u) mod n` is in the
/// connection set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantGraph {
    n: usize,
    connection_set: Vec<usize>,
}

impl CirculantGraph {
    /// The connection set must lie in `[1, n)` and be closed under `s -> n - s`.
    pub fn new(n: usize, mut connection_set: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n as u64));
        }
        connection_set.sort_unstable();
        connection_set.dedup();
        if let Some(&s) = connection_set.iter().find(|&&s| s == 0 || s >= n) {
            return Err(Error::IndexOutOfRange {
                index: s as u64,
                bound: n as u64,
            });
        }
        if connection_set
            .iter()
            .any(|&s| connection_set.binary_search(&(n - s)).is_err())
        {
            return Err(Error::AsymmetricConnectionSet(n as u64));
        }
        Ok(Self { n, connection_set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn connection_set(&self) -> &[usize] {
        &self.connection_set
    }

    pub fn adjacency(&self) -> Array2<u8> {
        circulant_adjacency(self.n, &self.connection_set)
    }
}

fn circulant_adjacency(n: usize, connection_set: &[usize]) -> Array2<u8> {
    let mut first_row = vec![0u8; n];
    for &s in connection_set {
        first_row[s] = 1;
    }
    Array2::from_shape_fn((n, n), |(u, v)| first_row[(v + n - u) % n])
}

/// The unitary Cayley graph `X(Z_n, Z_n^*)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitaryCayleyGraph {
    n: usize,
    connection_set: Vec<usize>,
    #[serde(rename = "adjacency_rows", with = "rows")]
    adjacency: Array2<u8>,
}

impl UnitaryCayleyGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewVertices(n as u64));
        }
        let connection_set: Vec<usize> = units_mod(n as u64)?
            .into_iter()
            .map(|u| u as usize)
            .collect();
        let adjacency = circulant_adjacency(n, &connection_set);
        Ok(Self {
            n,
            connection_set,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn connection_set(&self) -> &[usize] {
        &self.connection_set
    }

    pub fn adjacency(&self) -> &Array2<u8> {
        &self.adjacency
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[[u, v]] == 1
    }

    pub fn as_circulant(&self) -> CirculantGraph {
        CirculantGraph {
            n: self.n,
            connection_set: self.connection_set.clone(),
        }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adjacency
            .rows()
            .into_iter()
            .map(|row| row.iter().filter(|&&a| a == 1).count())
            .collect()
    }

    /// Breadth-first search from vertex 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &s in &self.connection_set {
                let w = (u + s) % self.n;
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// For `n = p^k`: whether the graph is complete `p`-partite with parts
    /// given by residue mod `p`.
    pub fn is_complete_multipartite_for_prime_power(&self) -> Result<bool> {
        let f = Factorization::of(self.n as u64)?;
        if !f.is_prime_power() {
            return Err(Error::NotPrimePower(self.n as u64));
        }
        let p = f.factors()[0].0 as usize;
        Ok(self
            .adjacency
            .indexed_iter()
            .all(|((u, v), &a)| (a == 1) == (u % p != v % p)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization")
    }
}

pub fn build_ucg(n: usize) -> Result<UnitaryCayleyGraph> {
    UnitaryCayleyGraph::new(n)
}

mod rows {
    use ndarray::Array2;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &Array2<u8>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<u8>> = m.rows().into_iter().map(|r| r.to_vec()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Array2<u8>, D::Error> {
        let rows = Vec::<Vec<u8>>::deserialize(d)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("adjacency must be square"));
        }
        Array2::from_shape_vec((n, n), rows.into_iter().flatten().collect())
            .map_err(D::Error::custom)
    }
}
