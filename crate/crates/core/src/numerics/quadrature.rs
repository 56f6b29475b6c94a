//! Globally adaptive Gauss–Kronrod quadrature (10-point Gauss, 21-point
//! Kronrod) for real- and complex-valued integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_complex::Complex64;

use crate::{Error, Result};

/// Values an integrand may return.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Cooperative cancellation flag shared between a caller and long-running
/// computations.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, AtomicOrdering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(AtomicOrdering::Relaxed)
    }
}

/// Snapshot handed to a progress observer after every bisection.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureProgress {
    pub subdivisions: usize,
    pub error_estimate: f64,
    pub tolerance: f64,
}

/// Progress callback.
#[derive(Clone)]
pub struct ProgressObserver(Arc<dyn Fn(QuadratureProgress) + Send + Sync>);

impl ProgressObserver {
    pub fn new(f: impl Fn(QuadratureProgress) + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }

    fn notify(&self, p: QuadratureProgress) {
        (self.0)(p)
    }
}

impl fmt::Debug for ProgressObserver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ProgressObserver(..)")
    }
}

#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections after the initial split at breakpoints.
    pub max_subdivisions: usize,
    /// Known feature locations; the interval is split there before any
    /// adaptive refinement. Points outside `(a, b)` are ignored.
    pub breakpoints: Vec<f64>,
    pub cancel: Option<CancelToken>,
    pub progress: Option<ProgressObserver>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            breakpoints: Vec::new(),
            cancel: None,
            progress: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints = points.into_iter().collect();
        self
    }

    pub fn max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: QuadValue> QuadratureResult<T> {
    /// Turns a non-converged result into [`Error::NumericalFailure`].
    pub fn require_converged(self, what: impl FnOnce() -> String) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NumericalFailure {
                what: what(),
                achieved: self.error_estimate,
            })
        }
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One 21-point Kronrod evaluation with its embedded 10-point Gauss estimate.
fn kronrod21<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> Panel<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::zero();
    let mut abs_sum = fc.magnitude() * WGK[10];
    let mut values = [(T::zero(), T::zero()); 10];
    for (j, slot) in values.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        *slot = (f1, f2);
        kronrod = kronrod + (f1 + f2) * WGK[j];
        abs_sum += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (fc - mean).magnitude();
    for (j, &(f1, f2)) in values.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).magnitude() + (f2 - mean).magnitude());
    }
    let width = half.abs();
    let res_abs = abs_sum * width;
    let res_asc = asc * width;
    let mut err = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: err,
    }
}

/// Integrates `f` over `[a, b]`.
///
/// Running out of subdivisions is not an error: the best estimate is returned
/// with `converged = false`. Only invalid input and cancellation yield `Err`.
pub fn integrate<T, F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    cfg.validate()?;
    if cfg.cancel.as_ref().is_some_and(CancelToken::is_cancelled) {
        return Err(Error::Cancelled);
    }
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::domain(format!("invalid integration range [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: T::zero(),
            error_estimate: 0.0,
            subdivisions_used: 0,
            evaluations: 0,
            converged: true,
        });
    }

    let mut cuts: Vec<f64> = cfg.breakpoints.iter().copied().filter(|&p| p > a && p < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut settled = Vec::new();
    let mut lo = a;
    for hi in cuts.into_iter().chain(std::iter::once(b)) {
        heap.push(kronrod21(&f, lo, hi));
        lo = hi;
    }
    let mut evaluations = 21 * heap.len();

    let mut total = heap.iter().fold(T::zero(), |acc, p| acc + p.value);
    let mut total_err: f64 = heap.iter().map(|p| p.error).sum();
    let mut subdivisions = 0;

    let tolerance = |v: T| cfg.abs_tol.max(cfg.rel_tol * v.magnitude());
    if let Some(obs) = &cfg.progress {
        obs.notify(QuadratureProgress {
            subdivisions,
            error_estimate: total_err,
            tolerance: tolerance(total),
        });
    }
    while total_err > tolerance(total) && subdivisions < cfg.max_subdivisions {
        if cfg.cancel.as_ref().is_some_and(CancelToken::is_cancelled) {
            return Err(Error::Cancelled);
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Too narrow to bisect in floating point.
            settled.push(worst);
            continue;
        }
        let left = kronrod21(&f, worst.a, mid);
        let right = kronrod21(&f, mid, worst.b);
        evaluations += 42;
        subdivisions += 1;
        total = total - worst.value + left.value + right.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if let Some(obs) = &cfg.progress {
            obs.notify(QuadratureProgress {
                subdivisions,
                error_estimate: total_err,
                tolerance: tolerance(total),
            });
        }
    }

    // Positional re-sum.
    let mut panels: Vec<Panel<T>> = heap.into_vec();
    panels.extend(settled);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().fold(T::zero(), |acc, p| acc + p.value);
    let error_estimate: f64 = panels.iter().map(|p| p.error).sum();
    Ok(QuadratureResult {
        value,
        error_estimate,
        subdivisions_used: subdivisions,
        evaluations,
        converged: error_estimate <= tolerance(value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(tol: f64) -> QuadratureConfig {
        QuadratureConfig::with_tolerances(tol, tol)
    }

    #[test]
    fn sine_over_half_period() {
        let r = integrate(f64::sin, 0.0, PI, &cfg(1e-13)).unwrap();
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn empty_interval_is_exactly_zero() {
        let r = integrate(|x: f64| x.exp(), 1.5, 1.5, &cfg(1e-12)).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.evaluations, 0);
        assert!(r.converged);
    }

    #[test]
    fn rejects_reversed_bounds_and_bad_config() {
        assert!(integrate(f64::sin, 1.0, 0.0, &cfg(1e-10)).is_err());
        assert!(integrate(f64::sin, 0.0, 1.0, &cfg(0.0)).is_err());
        assert!(integrate(f64::sin, 0.0, f64::INFINITY, &cfg(1e-8)).is_err());
    }

    // sin²θ/(θ²−π²)² on [0, 10] with the removable point at π as a breakpoint,
    // checked against a one-million-panel midpoint sum.
    #[test]
    fn removable_singularity_with_breakpoint() {
        let f = |t: f64| {
            let d = t - PI;
            if d.abs() < 1e-4 {
                1.0 / (4.0 * PI * PI) * (1.0 - d / PI)
            } else {
                t.sin().powi(2) / (t * t - PI * PI).powi(2)
            }
        };
        let r = integrate(f, 0.0, 10.0, &cfg(1e-13).breakpoints([PI])).unwrap();
        assert!(r.converged);
        let n = 1_000_000;
        let h = 10.0 / n as f64;
        let mut oracle = 0.0;
        for i in 0..n {
            oracle += f((i as f64 + 0.5) * h);
        }
        oracle *= h;
        assert!((r.value - oracle).abs() < 1e-9, "{} vs {}", r.value, oracle);
    }

    #[test]
    fn complex_integrand() {
        // ∫₀^π e^{ix} dx = 2i
        let r = integrate(|x: f64| Complex64::new(0.0, x).exp(), 0.0, PI, &cfg(1e-13)).unwrap();
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &cfg(1e-14).max_subdivisions(3)).unwrap();
        assert!(!r.converged);
        assert!(r.require_converged(|| "test".into()).is_err());
    }

    #[test]
    fn cancellation_stops_refinement() {
        let token = CancelToken::new();
        token.cancel();
        let mut c = cfg(1e-14);
        c.cancel = Some(token);
        let r = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &c);
        assert!(matches!(r, Err(Error::Cancelled)));
        let smooth = integrate(f64::cos, 0.0, 1.0, &c);
        assert!(matches!(smooth, Err(Error::Cancelled)));
    }

    #[test]
    fn progress_is_reported() {
        use std::sync::atomic::AtomicUsize;
        let calls = Arc::new(AtomicUsize::new(0));
        let seen = calls.clone();
        let mut c = cfg(1e-12);
        c.progress = Some(ProgressObserver::new(move |_| {
            seen.fetch_add(1, AtomicOrdering::Relaxed);
        }));
        let r = integrate(|x: f64| (20.0 * x).cos(), 0.0, 10.0, &c).unwrap();
        assert_eq!(calls.load(AtomicOrdering::Relaxed), r.subdivisions_used + 1);
        assert!(r.subdivisions_used > 0);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn additive_over_adjacent_intervals(a in -5.0f64..0.0, mid in 0.0f64..3.0, len in 0.1f64..5.0, w in 0.5f64..8.0) {
            let f = |x: f64| (w * x).sin() * (-0.1 * x * x).exp();
            let b = mid + len;
            let c = cfg(1e-12);
            let whole = integrate(f, a, b, &c).unwrap();
            let left = integrate(f, a, mid, &c).unwrap();
            let right = integrate(f, mid, b, &c).unwrap();
            let slack = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-14;
            proptest::prop_assert!((whole.value - left.value - right.value).abs() <= slack);
        }
    }
}
