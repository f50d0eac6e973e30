use space_core::num::golden_max;

/// Estimated maximum of `f` over `[a, b]`: a uniform scan of `samples`
/// points followed by a golden-section polish around the best bracket.
/// With a Lipschitz bound for `f` the scan error is certified as
/// `lip * h / 2`; without one the polish is a heuristic and the bound is
/// `None`.
pub fn segment_max(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    samples: usize,
    lip: Option<f64>,
) -> (f64, Option<f64>) {
    assert!(samples >= 2, "need at least the two endpoints, got {samples}");
    assert!(a < b, "empty segment [{a}, {b}]");
    let n = samples - 1;
    let mut best = f64::NEG_INFINITY;
    let mut best_i = 0;
    for i in 0..=n {
        let t = a + (b - a) * i as f64 / n as f64;
        let v = f(t);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = a + (b - a) * best_i.saturating_sub(1) as f64 / n as f64;
    let hi = a + (b - a) * (best_i + 1).min(n) as f64 / n as f64;
    if lo < hi {
        let (_, polished) = golden_max(&f, lo, hi, 60);
        best = best.max(polished);
    }
    let bound = lip.map(|l| l * (b - a) / n as f64 / 2.0);
    (best, bound)
}
