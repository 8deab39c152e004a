//! The Euler form of a quiver and its symmetric and antisymmetric parts.
//!
//! All arithmetic is checked; an overflow is reported as [`Error::Overflow`]
//! and never wraps.

use crate::error::{Error, Result};
use crate::quiver::Quiver;

fn check_len(quiver: &Quiver, v: &[i64]) -> Result<()> {
    if v.len() != quiver.vertex_count() {
        return Err(Error::LengthMismatch { expected: quiver.vertex_count(), found: v.len() });
    }
    Ok(())
}

#[inline]
fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("euler form"))
}

#[inline]
fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("euler form"))
}

/// `<d, e> = sum_i d_i e_i - sum_{arrows i -> j} d_i e_j`.
pub fn euler_form(quiver: &Quiver, d: &[i64], e: &[i64]) -> Result<i64> {
    check_len(quiver, d)?;
    check_len(quiver, e)?;
    let n = quiver.vertex_count();
    let mut acc = 0i64;
    for i in 0..n {
        acc = add(acc, mul(d[i], e[i])?)?;
    }
    for i in 0..n {
        for j in 0..n {
            let m = i64::from(quiver.arrows(i, j));
            if m != 0 {
                let term = mul(mul(m, d[i])?, e[j])?;
                acc = acc.checked_sub(term).ok_or(Error::Overflow("euler form"))?;
            }
        }
    }
    Ok(acc)
}

/// `(d, e) = <d, e> + <e, d>`.
pub fn sym_form(quiver: &Quiver, d: &[i64], e: &[i64]) -> Result<i64> {
    add(euler_form(quiver, d, e)?, euler_form(quiver, e, d)?)
}

/// `{d, e} = <d, e> - <e, d>`.
pub fn antisym_form(quiver: &Quiver, d: &[i64], e: &[i64]) -> Result<i64> {
    euler_form(quiver, d, e)?
        .checked_sub(euler_form(quiver, e, d)?)
        .ok_or(Error::Overflow("antisymmetrized form"))
}

/// Weighted out- and in-degrees of every vertex:
/// `out_i = sum_{i -> j} d_j` and `in_i = sum_{j -> i} d_j`, with multiplicity.
///
/// These equal `d_i - <i, d>` and `d_i - <d, i>` respectively.
pub fn weighted_degrees(quiver: &Quiver, d: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
    check_len(quiver, d)?;
    let n = quiver.vertex_count();
    let mut out = vec![0i64; n];
    let mut inc = vec![0i64; n];
    for i in 0..n {
        for j in 0..n {
            let m = i64::from(quiver.arrows(i, j));
            if m != 0 {
                out[i] = add(out[i], mul(m, d[j])?)?;
                inc[j] = add(inc[j], mul(m, d[i])?)?;
            }
        }
    }
    Ok((out, inc))
}

/// `{d, unit_i}` for every vertex `i`.
pub fn antisym_with_units(quiver: &Quiver, d: &[i64]) -> Result<Vec<i64>> {
    let (out, inc) = weighted_degrees(quiver, d)?;
    out.iter()
        .zip(&inc)
        .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::Overflow("antisymmetrized form")))
        .collect()
}

/// `(d, unit_i)` for every vertex `i`.
pub fn sym_with_units(quiver: &Quiver, d: &[i64]) -> Result<Vec<i64>> {
    let (out, inc) = weighted_degrees(quiver, d)?;
    (0..d.len())
        .map(|i| {
            mul(2, d[i])?
                .checked_sub(out[i])
                .and_then(|x| x.checked_sub(inc[i]))
                .ok_or(Error::Overflow("symmetrized form"))
        })
        .collect()
}
