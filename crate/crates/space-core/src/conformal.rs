use std::sync::Arc;

use crate::point::Point;

/// Structural shape of a conformal factor, used to pick closed-form paths.
#[derive(Clone, Debug, PartialEq)]
pub enum FactorForm {
    /// Everywhere equal to the stored value.
    Constant(f64),
    /// Depends only on coordinate 0 (time on 2-d spaces, position on 1-d).
    TimeOnly,
    /// No structure declared.
    General,
}

/// A positive weight `Omega` on points, with product/reciprocal algebra.
///
/// Positivity is an invariant: evaluation asserts `Omega(p) > 0`.
/// `lipschitz` is an optional user-declared global Lipschitz bound used to
/// attach rigorous error bounds to segment-extremum estimates.
#[derive(Clone)]
pub struct ConformalFactor {
    eval: Arc<dyn Fn(&Point) -> f64 + Send + Sync>,
    time_fn: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    pub label: String,
    pub form: FactorForm,
    pub lipschitz: Option<f64>,
}

impl ConformalFactor {
    /// The constant factor `c`. Precondition: `c` finite and positive.
    pub fn constant(c: f64) -> ConformalFactor {
        assert!(c.is_finite() && c > 0.0, "constant factor must be positive, got {c}");
        ConformalFactor {
            eval: Arc::new(move |_| c),
            time_fn: Some(Arc::new(move |_| c)),
            label: format!("{c}"),
            form: FactorForm::Constant(c),
            lipschitz: Some(0.0),
        }
    }

    /// A factor depending only on coordinate 0.
    pub fn time_only(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> ConformalFactor {
        let f = Arc::new(f);
        let g = Arc::clone(&f);
        ConformalFactor {
            eval: Arc::new(move |p: &Point| g(p.coords[0])),
            time_fn: Some(f),
            label: label.into(),
            form: FactorForm::TimeOnly,
            lipschitz: None,
        }
    }

    /// A factor with no declared structure.
    pub fn from_fn(
        label: impl Into<String>,
        f: impl Fn(&Point) -> f64 + Send + Sync + 'static,
    ) -> ConformalFactor {
        ConformalFactor {
            eval: Arc::new(f),
            time_fn: None,
            label: label.into(),
            form: FactorForm::General,
            lipschitz: None,
        }
    }

    pub fn with_lipschitz(mut self, bound: f64) -> ConformalFactor {
        assert!(bound.is_finite() && bound >= 0.0);
        self.lipschitz = Some(bound);
        self
    }

    /// Evaluates the factor. Asserts positivity, the defining invariant.
    pub fn eval(&self, p: &Point) -> f64 {
        let v = (self.eval)(p);
        assert!(
            v > 0.0 && v.is_finite(),
            "conformal factor `{}` must be positive and finite, got {v} at {:?}",
            self.label,
            p.coords
        );
        v
    }

    /// The factor as a function of coordinate 0, when it has that shape.
    pub fn time_profile(&self) -> Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>> {
        self.time_fn.clone()
    }

    pub fn constant_value(&self) -> Option<f64> {
        match self.form {
            FactorForm::Constant(c) => Some(c),
            _ => None,
        }
    }

    /// Pointwise product `a * b`.
    pub fn product(a: &ConformalFactor, b: &ConformalFactor) -> ConformalFactor {
        if let (Some(ca), Some(cb)) = (a.constant_value(), b.constant_value()) {
            let mut f = ConformalFactor::constant(ca * cb);
            f.label = format!("({})*({})", a.label, b.label);
            return f;
        }
        let ea = Arc::clone(&a.eval);
        let eb = Arc::clone(&b.eval);
        let time_fn: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>> =
            match (a.time_fn.clone(), b.time_fn.clone()) {
                (Some(fa), Some(fb)) => Some(Arc::new(move |t: f64| fa(t) * fb(t))),
                _ => None,
            };
        let form = if time_fn.is_some() {
            FactorForm::TimeOnly
        } else {
            FactorForm::General
        };
        // Lipschitz bound of a product is only derivable when one side is constant.
        let lipschitz = match (a.constant_value(), b.constant_value()) {
            (Some(c), None) => b.lipschitz.map(|l| c * l),
            (None, Some(c)) => a.lipschitz.map(|l| c * l),
            _ => None,
        };
        ConformalFactor {
            eval: Arc::new(move |p: &Point| ea(p) * eb(p)),
            time_fn,
            label: format!("({})*({})", a.label, b.label),
            form,
            lipschitz,
        }
    }

    /// Pointwise reciprocal `1 / Omega`.
    pub fn reciprocal(&self) -> ConformalFactor {
        if let Some(c) = self.constant_value() {
            let mut f = ConformalFactor::constant(1.0 / c);
            f.label = format!("1/({})", self.label);
            return f;
        }
        let e = Arc::clone(&self.eval);
        let time_fn: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>> = self
            .time_fn
            .clone()
            .map(|f| Arc::new(move |t: f64| 1.0 / f(t)) as Arc<dyn Fn(f64) -> f64 + Send + Sync>);
        ConformalFactor {
            eval: Arc::new(move |p: &Point| 1.0 / e(p)),
            time_fn,
            label: format!("1/({})", self.label),
            form: match self.form {
                FactorForm::Constant(c) => FactorForm::Constant(1.0 / c),
                FactorForm::TimeOnly => FactorForm::TimeOnly,
                FactorForm::General => FactorForm::General,
            },
            lipschitz: None,
        }
    }
}
