//! Bessel functions of the first kind `J_n` and modified Bessel functions
//! `I_0`, `I_1` on the non-negative real axis.
//!
//! `J_n` is evaluated by the musl/FreeBSD algorithms shipped in [`libm`]
//! (rational approximations near the origin, Hankel asymptotics for large
//! arguments, Miller recurrence for `x < n`). `I_0` and `I_1` use the
//! ascending series up to `x = 50` and the large-argument asymptotic series
//! beyond, with an exponentially scaled variant for arguments where `I_n`
//! itself overflows.

use std::f64::consts::PI;

use thiserror::Error;

/// Largest harmonic order accepted by [`BesselOrder::new`].
pub const MAX_HARMONIC_ORDER: i32 = 64;

/// Above this argument the unscaled `I_n` is refused.
pub const UNSCALED_I_LIMIT: f64 = 700.0;

const I_SERIES_LIMIT: f64 = 50.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: I_{order}({x}) overflows; request the exponentially scaled value")]
    Range { order: i32, x: f64 },
}

/// Integer Bessel order, bounded by [`MAX_HARMONIC_ORDER`] in magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BesselOrder(i32);

impl BesselOrder {
    pub const ZERO: BesselOrder = BesselOrder(0);
    pub const ONE: BesselOrder = BesselOrder(1);

    pub fn new(n: i32) -> Result<Self, SpecfunError> {
        if n.abs() > MAX_HARMONIC_ORDER {
            return Err(SpecfunError::Domain(format!(
                "Bessel order {n} exceeds the maximum harmonic order {MAX_HARMONIC_ORDER}"
            )));
        }
        Ok(BesselOrder(n))
    }

    pub fn get(self) -> i32 {
        self.0
    }
}

impl TryFrom<i32> for BesselOrder {
    type Error = SpecfunError;

    fn try_from(n: i32) -> Result<Self, Self::Error> {
        BesselOrder::new(n)
    }
}

fn check_argument(x: f64) -> Result<(), SpecfunError> {
    if !x.is_finite() {
        return Err(SpecfunError::Domain(format!("argument {x} is not finite")));
    }
    if x < 0.0 {
        return Err(SpecfunError::Domain(format!(
            "argument {x} is negative; only x >= 0 is supported"
        )));
    }
    Ok(())
}

/// `J_n(x)` for `x >= 0`. Negative orders follow `J₋ₙ = (−1)ⁿ Jₙ`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64, SpecfunError> {
    check_argument(x)?;
    Ok(jn(order.0, x))
}

/// Unchecked `J_n(x)`; callers guarantee `x` finite and non-negative.
#[inline]
pub(crate) fn jn(n: i32, x: f64) -> f64 {
    if n < 0 {
        let v = jn(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    match n {
        0 => libm::j0(x),
        1 => libm::j1(x),
        _ => libm::jn(n, x),
    }
}

/// Modified Bessel function `I_n(x)` for `n ∈ {0, 1}`.
///
/// With `scaled = true` the result is `e^(−x) I_n(x)`, which stays finite for
/// every argument. Unscaled evaluation above [`UNSCALED_I_LIMIT`] is a range
/// error.
pub fn bessel_i(order: BesselOrder, x: f64, scaled: bool) -> Result<f64, SpecfunError> {
    check_argument(x)?;
    let n = order.0;
    if n != 0 && n != 1 {
        return Err(SpecfunError::Domain(format!(
            "modified Bessel function supports orders 0 and 1, got {n}"
        )));
    }
    if !scaled && x > UNSCALED_I_LIMIT {
        return Err(SpecfunError::Range { order: n, x });
    }
    if x <= I_SERIES_LIMIT {
        let v = i_series(n, x);
        Ok(if scaled { v * (-x).exp() } else { v })
    } else {
        let v = i_asymptotic_scaled(n, x);
        Ok(if scaled { v } else { v * x.exp() })
    }
}

fn i_series(n: i32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = (1..=n).fold(1.0, |t, j| t * half / j as f64);
    let mut sum = term;
    let mut m = 1.0;
    loop {
        term *= q / (m * (m + n as f64));
        sum += term;
        if term <= sum * f64::EPSILON * 0.25 {
            break;
        }
        m += 1.0;
    }
    sum
}

// e^(−x) I_n(x) ~ (2πx)^(−1/2) Σ_k (−1)^k a_k(n) / x^k
fn i_asymptotic_scaled(n: i32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= sum.abs() * f64::EPSILON * 0.25 {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// The first `count` positive zeros of `J_n`, strictly increasing.
pub fn bessel_j_zeros(order: BesselOrder, count: usize) -> Result<Vec<f64>, SpecfunError> {
    if count == 0 || count > 100_000 {
        return Err(SpecfunError::Domain(format!(
            "zero count must lie in 1..=100000, got {count}"
        )));
    }
    Ok(BesselZeros::new(order.0.abs()).take(count).collect())
}

/// Lazily enumerates the positive zeros of `J_n` (`n >= 0`).
///
/// Each zero is bracketed by a forward scan with step 0.25 and then bisected
/// to full precision. Consecutive zeros of `J_n` are always more than 2.9
/// apart, so no zero can hide inside a scan step.
#[derive(Debug, Clone)]
pub(crate) struct BesselZeros {
    n: i32,
    cursor: f64,
}

impl BesselZeros {
    pub(crate) fn new(n: i32) -> Self {
        // J_n has no zeros in (0, n].
        let start = if n == 0 { 0.5 } else { n as f64 };
        BesselZeros { n, cursor: start }
    }
}

impl Iterator for BesselZeros {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        const STEP: f64 = 0.25;
        let mut a = self.cursor;
        let mut fa = jn(self.n, a);
        loop {
            let b = a + STEP;
            let fb = jn(self.n, b);
            if fa == 0.0 {
                self.cursor = a + 1.0;
                return Some(a);
            }
            if fa.signum() != fb.signum() {
                let root = bisect(|x| jn(self.n, x), a, b, fa);
                self.cursor = root + 1.0;
                return Some(root);
            }
            a = b;
            fa = fb;
        }
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
