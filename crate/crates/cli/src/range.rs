// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

/// `--n` argument: a single value `N` or an inclusive range `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn iter(self) -> RangeInclusive<usize> {
        self.start..=self.end
    }

    pub fn is_single(self) -> bool {
        self.start == self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeError(String);

impl fmt::Display for RangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected N or a..b with a <= b, got {:?}", self.0)
    }
}

impl std::error::Error for RangeError {}

impl FromStr for NRange {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RangeError(s.to_string());
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(bad());
        }
        Ok(Self { start, end })
    }
}
