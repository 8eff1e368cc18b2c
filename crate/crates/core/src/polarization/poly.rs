//! Exact power-basis polynomials for per-channel erasure probabilities, and
//! the composite-function route to product-kernel behavior.
//!
//! Channel `j*l2 + k` of the product of an outer `l1`-kernel with an inner
//! `l2`-kernel carries `g_k(f_j(z))`, where `f` is the outer behavior and `g`
//! the inner one. Compositions are carried out in exact integer arithmetic.

use crate::error::{Error, Result};
use crate::gf2::binomial;
use crate::polarization::table::{ETable, TableSource};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Per-channel polarization behavior as exact integer polynomials in `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPb {
    pub l: usize,
    /// `coeffs[i][m]` is the coefficient of `z^m` in `p_i`, `m = 0..=l`.
    coeffs: Vec<Vec<BigInt>>,
}

impl PolyPb {
    /// Expands `sum_w E[i][w] z^w (1-z)^(l-w)` into the power basis, exactly.
    pub fn from_etable(table: &ETable) -> Self {
        let l = table.l;
        let coeffs = (0..l)
            .map(|i| {
                let mut c = vec![BigInt::zero(); l + 1];
                for w in 0..=l {
                    let e = table.entry(i, w);
                    if e == 0 {
                        continue;
                    }
                    // z^w (1-z)^(l-w) = sum_t (-1)^t C(l-w, t) z^(w+t)
                    for t in 0..=(l - w) {
                        let mut term = BigInt::from(e) * BigInt::from(binomial(l - w, t));
                        if t % 2 == 1 {
                            term = -term;
                        }
                        c[w + t] += term;
                    }
                }
                c
            })
            .collect();
        PolyPb { l, coeffs }
    }

    pub fn channels(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self, i: usize) -> &[BigInt] {
        &self.coeffs[i]
    }

    /// Horner evaluation in floating point, clamped into `[0, 1]`.
    pub fn eval(&self, i: usize, z: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs[i].iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(0.0);
        }
        acc.clamp(0.0, 1.0)
    }

    /// Checks `p_i(0) = 0`, `p_i(1) = 1` and `[0, 1]` range on a coarse grid.
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c[0].is_zero() {
                return Err(Error::Integrity(format!("channel {i}: p(0) != 0")));
            }
            let at_one: BigInt = c.iter().sum();
            if at_one != BigInt::from(1) {
                return Err(Error::Integrity(format!("channel {i}: p(1) != 1")));
            }
            for step in 0..=32 {
                let z = step as f64 / 32.0;
                let mut acc = 0.0f64;
                for coeff in c.iter().rev() {
                    acc = acc * z + coeff.to_f64().unwrap_or(0.0);
                }
                if !(-1e-9..=1.0 + 1e-9).contains(&acc) {
                    return Err(Error::Integrity(format!(
                        "channel {i}: p({z}) = {acc} outside [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Raw constructor for hand-built behaviors (tests, degenerate inputs).
    pub fn from_coefficients(l: usize, coeffs: Vec<Vec<BigInt>>) -> Self {
        PolyPb { l, coeffs }
    }
}

/// Exact polynomial composition `q(p(z))` by Horner over polynomial arithmetic.
fn compose_poly(q: &[BigInt], p: &[BigInt], out_len: usize) -> Vec<BigInt> {
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); out_len];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if i + j < out_len && !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        out
    };
    let mut acc = vec![BigInt::zero(); out_len];
    for c in q.iter().rev() {
        acc = mul(&acc, p);
        acc[0] += c;
    }
    acc
}

/// Composite behavior of `outer (x) inner`: channel `j*l2 + k` is
/// `g_k(f_j(z))`.
pub fn compose(outer: &PolyPb, inner: &PolyPb) -> PolyPb {
    let l = outer.l * inner.l;
    let mut coeffs = Vec::with_capacity(l);
    for j in 0..outer.channels() {
        for k in 0..inner.channels() {
            coeffs.push(compose_poly(
                inner.coefficients(k),
                outer.coefficients(j),
                l + 1,
            ));
        }
    }
    PolyPb { l, coeffs }
}

/// Converts power-basis polynomials back to integer counts `E[i][w]`.
///
/// The change of basis is triangular: `c_m = sum_{w<=m} E_w (-1)^(m-w)
/// C(l-w, m-w)`, solved upward for `E`. Any channel whose counts leave
/// `[0, C(l, w)]` is an integrity error.
pub fn etable_from_poly(pb: &PolyPb, source: TableSource) -> Result<ETable> {
    let l = pb.l;
    let mut rows = Vec::with_capacity(pb.channels());
    for i in 0..pb.channels() {
        let c = pb.coefficients(i);
        if c.len() > l + 1 {
            return Err(Error::Integrity(format!(
                "channel {i}: degree exceeds {l}"
            )));
        }
        let mut e = vec![BigInt::zero(); l + 1];
        let mut row = Vec::with_capacity(l + 1);
        for m in 0..=l {
            let mut acc = c.get(m).cloned().unwrap_or_else(BigInt::zero);
            for (w, e_w) in e.iter().enumerate().take(m) {
                let mut term = e_w * BigInt::from(binomial(l - w, m - w));
                if (m - w) % 2 == 1 {
                    term = -term;
                }
                acc -= term;
            }
            let cap = BigInt::from(binomial(l, m));
            if acc < BigInt::zero() || acc > cap {
                return Err(Error::Integrity(format!(
                    "channel {i}: E[{m}] = {acc} outside [0, C({l}, {m})]"
                )));
            }
            row.push(acc.to_u64().expect("bounded by C(l, m)"));
            e[m] = acc;
        }
        rows.push(row);
    }
    ETable::new(l, source, rows)
}
