//! Length bounds for orientable sequences.
//!
//! All arithmetic is exact in `i128`/`u128`; orders up to 64 are supported
//! by the closed forms, and up to [`ENUMERATION_LIMIT`] by enumeration.

use crate::error::{Error, Result};
use crate::word::{for_each_necklace, is_asymmetric_bracelet_bits};

/// Largest order for which A(n) is enumerated.
pub const ENUMERATION_LIMIT: usize = 28;

/// Largest order accepted by the closed-form bounds.
pub const FORMULA_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerBoundMethod {
    /// Möbius inversion over the divisors of `n`.
    Formula,
    /// Sum of `|ap(α)|` over the enumerated members of A(n).
    Enumeration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRecord {
    pub n: usize,
    /// `L_n`, the length of the cycle-joining construction.
    pub lower: u128,
    /// `U_n`; defined for `n >= 5`.
    pub upper: Option<u128>,
    /// `2^(n-1) - 2^floor((n-1)/2)`.
    pub trivial: u128,
    /// Upper bound on acyclic orientable sequences.
    pub aos_upper: u128,
    /// `|A(n)|`; `None` past the enumeration limit.
    pub asym_count: Option<u128>,
}

impl BoundsRecord {
    pub fn compute(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            lower: lower_bound(n, LowerBoundMethod::Formula)?,
            upper: if n >= 5 { Some(upper_bound(n)?) } else { None },
            trivial: trivial_upper_bound(n)?,
            aos_upper: aos_upper_bound(n)?,
            asym_count: count_asymmetric_bracelets(n).ok(),
        })
    }
}

fn check_formula_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "below the smallest order the bound is defined for",
        });
    }
    if n > FORMULA_LIMIT {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "exceeds the exact-arithmetic limit of 64",
        });
    }
    Ok(())
}

fn check_enumeration_order(n: usize) -> Result<()> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "outside the enumeration range 1..=28",
        });
    }
    Ok(())
}

fn pow2(e: usize) -> i128 {
    1i128 << e
}

pub(crate) fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Möbius function by trial division.
pub fn mobius(mut n: usize) -> i128 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `2·H(d)`, kept doubled so the halving happens once at the end.
fn twice_h(d: usize) -> i128 {
    divisors(d)
        .map(|i| i as i128 * (pow2(i.div_ceil(2)) + pow2(i / 2 + 1)))
        .sum()
}

fn lower_bound_formula(n: usize) -> Result<u128> {
    // L_n = 2^(n-1) - 1/2 Σ_{d|n} μ(n/d) (n/d) H(d), with H(d) = 1/2 Σ_{i|d} i(...)
    let quadruple_sum: i128 = divisors(n)
        .map(|d| mobius(n / d) * (n / d) as i128 * twice_h(d))
        .sum();
    if quadruple_sum % 4 != 0 {
        return Err(Error::Internal(format!(
            "lower bound sum {quadruple_sum} for n = {n} is not divisible by 4"
        )));
    }
    let value = pow2(n - 1) - quadruple_sum / 4;
    u128::try_from(value).map_err(|_| Error::Internal(format!("negative lower bound {value}")))
}

fn lower_bound_enumeration(n: usize) -> Result<u128> {
    check_enumeration_order(n)?;
    let mut total = 0u128;
    for_each_necklace(n, |w, period| {
        if is_asymmetric_bracelet_bits(w) {
            total += period as u128;
        }
    });
    Ok(total)
}

/// `L_n`, the classical lower bound, which is also the length of the
/// sequences built by this crate.
pub fn lower_bound(n: usize, method: LowerBoundMethod) -> Result<u128> {
    check_formula_order(n, 2)?;
    match method {
        LowerBoundMethod::Formula => lower_bound_formula(n),
        LowerBoundMethod::Enumeration => lower_bound_enumeration(n),
    }
}

/// `U_n`, piecewise by `n mod 4`. Evaluated as `18·U_n` in integers.
pub fn upper_bound(n: usize) -> Result<u128> {
    check_formula_order(n, 5)?;
    let big = 18 * pow2(n - 1);
    let k = n as i128;
    let scaled = match n % 4 {
        0 => big - 82 * pow2(n / 2 - 1) + 6 * k + 32,
        1 => big - 62 * pow2((n - 1) / 2) + 6 * k + 38,
        2 => big - 82 * pow2(n / 2 - 1) + 3 * k + 40,
        _ => big - 62 * pow2((n - 1) / 2) + 3 * k + 43,
    };
    if scaled % 18 != 0 {
        return Err(Error::Internal(format!(
            "upper bound for n = {n} is not an integer ({scaled}/18)"
        )));
    }
    u128::try_from(scaled / 18).map_err(|_| Error::Internal("negative upper bound".into()))
}

/// `2^(n-1) - 2^floor((n-1)/2)`: one window per non-palindromic reversal pair.
pub fn trivial_upper_bound(n: usize) -> Result<u128> {
    check_formula_order(n, 2)?;
    Ok((pow2(n - 1) - pow2((n - 1) / 2)) as u128)
}

/// Upper bound on the length of an acyclic orientable sequence.
pub fn aos_upper_bound(n: usize) -> Result<u128> {
    check_formula_order(n, 2)?;
    let pairs = (pow2(n) - pow2(n.div_ceil(2))) / 2;
    Ok((pairs + n as i128 - 1) as u128)
}

/// `|A(n)|` by filtering the necklace enumeration.
pub fn count_asymmetric_bracelets(n: usize) -> Result<u128> {
    check_enumeration_order(n)?;
    let mut count = 0u128;
    for_each_necklace(n, |w, _| {
        if is_asymmetric_bracelet_bits(w) {
            count += 1;
        }
    });
    Ok(count)
}
