//! Shared numeric helpers: quadrature, extremum polish, root finding,
//! deterministic hashing for sample streams, significant-digit rounding.

/// SplitMix64 step: hashes `state` into a well-mixed 64-bit value.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Maps a hash to a float in `[0, 1)`.
pub fn unit_from_hash(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Two independent unit floats derived from `(seed, k)`.
pub fn unit_pair(seed: u64, k: u64) -> (f64, f64) {
    let a = splitmix64(seed ^ splitmix64(k));
    let b = splitmix64(a);
    (unit_from_hash(a), unit_from_hash(b))
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`. Precondition: `f` finite on `[a, b]`, `a <= b`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Golden-section maximum of `f` on `[a, b]`. Returns `(argmax, max)`.
/// Exact for unimodal `f`; otherwise a local improvement over the endpoints.
pub fn golden_max(f: &dyn Fn(f64) -> f64, a: f64, b: f64, iters: u32) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let xm = 0.5 * (lo + hi);
    let fm = f(xm);
    let mut best = (xm, fm);
    for (x, v) in [(a, f(a)), (b, f(b)), (c, fc), (d, fd)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Golden-section minimum of `f` on `[a, b]`. Returns `(argmin, min)`.
pub fn golden_min(f: &dyn Fn(f64) -> f64, a: f64, b: f64, iters: u32) -> (f64, f64) {
    let neg = |x: f64| -f(x);
    let (x, v) = golden_max(&neg, a, b, iters);
    (x, -v)
}

/// Bisection root of a monotone `f` with `f(lo) <= 0 <= f(hi)` (or the
/// reverse). Returns the midpoint after `iters` halvings.
pub fn bisect_root(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, iters: u32) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let rising = f(lo) <= f(hi);
    for _ in 0..iters {
        let m = 0.5 * (lo + hi);
        let fm = f(m);
        let below = if rising { fm < 0.0 } else { fm > 0.0 };
        if below {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

/// Aitken delta-squared limit of the last three terms of `values`, which
/// is Richardson extrapolation with the observed convergence ratio, clamped
/// at zero for nonnegative limits. Exact for geometric tails and for error
/// linear in a halving step. Fewer than three terms, a stalled tail, or an
/// expanding difference sequence fall back to the final term unchanged.
/// Precondition: `values` nonempty.
pub fn aitken_limit(values: &[f64]) -> f64 {
    let last = *values.last().expect("aitken_limit needs at least one value");
    if values.len() < 3 {
        return last.max(0.0);
    }
    let h = &values[values.len() - 3..];
    let d1 = h[1] - h[0];
    let d2 = h[2] - h[1];
    let den = d2 - d1;
    if den == 0.0 || d2.abs() >= d1.abs() {
        return last.max(0.0);
    }
    (h[2] - d2 * d2 / den).max(0.0)
}

/// Rounds `x` to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(digits - 1 - mag);
    (x * factor).round() / factor
}

/// Formats `x` with 9 significant digits, the workspace-wide output rule.
pub fn fmt_sig9(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let r = round_sig(x, 9);
    // Shortest decimal form that round-trips the rounded value.
    let plain = format!("{r}");
    if plain.parse::<f64>() == Ok(r) {
        plain
    } else {
        format!("{r:.9e}")
    }
}
