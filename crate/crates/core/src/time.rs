// SPDX-License-Identifier: Apache-2.0

//! Walk times, either plain radians or exact rational multiples of pi.
//!
//! Grammar (whitespace ignored): `<int>`, `<float>`, `pi`, `<int>*pi`,
//! `pi/<int>`, `<int>*pi/<int>`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numtheory::gcd;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Time {
    Radians(f64),
    /// `p * pi / q` with `q > 0` and `gcd(p, q) = 1`.
    PiMultiple { p: i64, q: u64 },
}

impl Time {
    pub fn pi_multiple(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidTime(format!("{p}*pi/0")));
        }
        let g = gcd(p.unsigned_abs(), q).max(1);
        Ok(Time::PiMultiple {
            p: p / g as i64,
            q: q / g,
        })
    }

    pub fn value(self) -> f64 {
        match self {
            Time::Radians(t) => t,
            Time::PiMultiple { p, q } => p as f64 * PI / q as f64,
        }
    }

    pub fn exact(self) -> Option<(i64, u64)> {
        match self {
            Time::Radians(_) => None,
            Time::PiMultiple { p, q } => Some((p, q)),
        }
    }

    /// `exp(-i * lambda * t)`. For exact times the angle is reduced mod 2 pi in
    /// integers before any floating point evaluation.
    pub fn phase(self, lambda: i64) -> num_complex::Complex64 {
        let angle = match self {
            Time::Radians(t) => -(lambda as f64) * t,
            Time::PiMultiple { p, q } => {
                let q = q as i128;
                let k = (lambda as i128 * p as i128).rem_euclid(2 * q);
                -PI * k as f64 / q as f64
            }
        };
        num_complex::Complex64::from_polar(1.0, angle)
    }

    /// Nearest `p * pi / q` with the smallest `q <= max_q`, if within `tol`.
    pub fn snap(t: f64, max_q: u64, tol: f64) -> Option<Time> {
        (1..=max_q).find_map(|q| {
            let p = (t * q as f64 / PI).round();
            let candidate = p * PI / q as f64;
            ((candidate - t).abs() <= tol)
                .then(|| Time::pi_multiple(p as i64, q).ok())
                .flatten()
        })
    }

    /// `"p*pi/q"` rendering for exact times.
    pub fn exact_string(self) -> Option<String> {
        self.exact().map(|(p, q)| format!("{p}*pi/{q}"))
    }
}

impl From<f64> for Time {
    fn from(t: f64) -> Self {
        Time::Radians(t)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Time::Radians(t) => write!(f, "{t}"),
            Time::PiMultiple { p, q } => write!(f, "{p}*pi/{q}"),
        }
    }
}

/// A parsed time argument together with its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeExpression {
    pub raw: String,
    pub time: Time,
}

impl TimeExpression {
    pub fn parse(raw: &str) -> Result<Self> {
        let bad = || Error::InvalidTime(raw.to_string());
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let time = match s.find("pi") {
            None => {
                let t: f64 = s.parse().map_err(|_| bad())?;
                if !t.is_finite() {
                    return Err(bad());
                }
                Time::Radians(t)
            }
            Some(at) => {
                let (head, tail) = (&s[..at], &s[at + 2..]);
                let p: i64 = match head {
                    "" => 1,
                    "-" => -1,
                    _ => head
                        .strip_suffix('*')
                        .ok_or_else(bad)?
                        .parse()
                        .map_err(|_| bad())?,
                };
                let q: u64 = match tail {
                    "" => 1,
                    _ => tail
                        .strip_prefix('/')
                        .ok_or_else(bad)?
                        .parse()
                        .map_err(|_| bad())?,
                };
                Time::pi_multiple(p, q).map_err(|_| bad())?
            }
        };
        Ok(Self {
            raw: raw.to_string(),
            time,
        })
    }

    pub fn value(&self) -> f64 {
        self.time.value()
    }

    pub fn exact(&self) -> Option<(i64, u64)> {
        self.time.exact()
    }
}

impl FromStr for TimeExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
