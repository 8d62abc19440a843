// SPDX-License-Identifier: Apache-2.0

//! Browser bindings. Each export returns a JSON string; the plain functions
//! underneath are ordinary Rust and tested natively.

use wasm_bindgen::prelude::*;

use ucg::detect::{detect_at, scan_profile};
use ucg::spectral::spectrum_via_ramanujan;
use ucg::time::TimeExpression;

/// Largest `n` the page accepts; keeps the profile responsive.
pub const MAX_N: usize = 512;

fn check_n(n: usize) -> ucg::Result<()> {
    if n > MAX_N {
        Err(ucg::Error::IndexOutOfRange {
            index: n as u64,
            bound: MAX_N as u64 + 1,
        })
    } else {
        Ok(())
    }
}

pub fn spectrum(n: usize) -> ucg::Result<String> {
    check_n(n)?;
    Ok(ucg::json::to_string(&spectrum_via_ramanujan(n)?))
}

/// Revival profile of `(0, v)` as `[{t, alpha_sq, beta_sq, residual}, ...]`.
pub fn profile(n: usize, v: usize, samples: usize) -> ucg::Result<String> {
    check_n(n)?;
    let spec = spectrum_via_ramanujan(n)?;
    Ok(ucg::json::to_string(&scan_profile(&spec, 0, v, samples)?))
}

pub fn certificate(n: usize, u: usize, v: usize, t: &str, tol: f64) -> ucg::Result<String> {
    check_n(n)?;
    let spec = spectrum_via_ramanujan(n)?;
    let t = TimeExpression::parse(t)?;
    Ok(ucg::json::to_string(&detect_at(&spec, u, v, t.time, tol)?))
}

fn js(r: ucg::Result<String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = spectrum)]
pub fn spectrum_js(n: usize) -> Result<String, JsError> {
    js(spectrum(n))
}

#[wasm_bindgen(js_name = profile)]
pub fn profile_js(n: usize, v: usize, samples: usize) -> Result<String, JsError> {
    js(profile(n, v, samples))
}

#[wasm_bindgen(js_name = detect)]
pub fn detect_js(n: usize, u: usize, v: usize, t: &str, tol: f64) -> Result<String, JsError> {
    js(certificate(n, u, v, t, tol))
}
