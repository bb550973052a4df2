//! Top nonvanishing dual-class degrees of the configuration-space bundles
//! `xi_{M,k}` and their complex analogues.

use std::fmt;

use serde::Serialize;

use crate::digits::is_power_of;
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::manifold::{top_dual_degree, ManifoldSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    #[default]
    Real,
    Complex,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Real => "real",
            Regime::Complex => "complex",
        })
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Regime::Real),
            "complex" => Ok(Regime::Complex),
            other => Err(Error::InvalidArgument(format!("unknown regime `{other}`"))),
        }
    }
}

/// Either an exact top degree or a proven lower bound for it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum TopDegree {
    Exact(u64),
    AtLeast(u64),
}

impl TopDegree {
    pub fn value(self) -> u64 {
        match self {
            TopDegree::Exact(v) | TopDegree::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, TopDegree::Exact(_))
    }
}

impl fmt::Display for TopDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopDegree::Exact(v) => write!(f, "{v}"),
            TopDegree::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BundleSource {
    /// lambda = m + q for closed connected M and k = 2.
    ClosedManifoldCorollary,
    /// lambda = 2^i - 1 for the plane with 2^i points.
    PlaneLemma,
    /// tau = [m/2] for complex configurations of two points on a sphere.
    ComplexSphereLemma,
    /// kappa >= 2m - 2 for two points on CP^m.
    ComplexProjectiveLemma,
    /// [(m-1)/2](p-1) for p points in R^m, complex regime.
    ComplexEuclideanLemma,
}

impl fmt::Display for BundleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BundleSource::ClosedManifoldCorollary => "closed-manifold corollary (lambda = m + q)",
            BundleSource::PlaneLemma => "plane lemma (lambda = 2^i - 1)",
            BundleSource::ComplexSphereLemma => "complex sphere lemma (tau = [m/2])",
            BundleSource::ComplexProjectiveLemma => "complex CP^m lemma (kappa >= 2m - 2)",
            BundleSource::ComplexEuclideanLemma => "complex Euclidean lemma ([(m-1)/2](p-1))",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleProfile {
    pub spec: ManifoldSpec,
    pub points: u32,
    pub regime: Regime,
    pub top_degree: TopDegree,
    pub source: BundleSource,
}

fn not_determined(spec: &ManifoldSpec, k: u32, regime: Regime) -> Error {
    Error::NotDetermined(format!("top dual degree of the {regime} bundle for ({spec},{k})"))
}

/// Top nonvanishing dual-class degree of the bundle over the unordered
/// configuration space of `k` points in `spec`.
///
/// Supported: closed connected specs with `k = 2` (real), `(R^2, 2^i)`
/// (real), `(S^m, 2)` (complex), `(CP^m, 2)` with `m >= 4` (complex, lower
/// bound) and `(R^m, p)` with `p` an odd prime (complex, lower bound).
pub fn lambda_top(spec: &ManifoldSpec, k: u32, regime: Regime) -> Result<BundleProfile> {
    spec.validate()?;
    if k < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 points, got {k}")));
    }
    let profile = |top_degree, source| {
        Ok(BundleProfile { spec: spec.clone(), points: k, regime, top_degree, source })
    };
    match (regime, spec) {
        (Regime::Real, s) if s.is_closed() && k == 2 => {
            let q = top_dual_degree(s).q as u64;
            profile(TopDegree::Exact(s.dimension() as u64 + q), BundleSource::ClosedManifoldCorollary)
        }
        (Regime::Real, ManifoldSpec::Euclid(2)) if is_power_of(k as u64, 2) => {
            profile(TopDegree::Exact(k as u64 - 1), BundleSource::PlaneLemma)
        }
        (Regime::Complex, ManifoldSpec::Sphere(m)) if k == 2 => {
            profile(TopDegree::Exact((m / 2) as u64), BundleSource::ComplexSphereLemma)
        }
        (Regime::Complex, ManifoldSpec::ComplexProj(m)) if k == 2 && *m >= 4 => {
            profile(TopDegree::AtLeast(2 * *m as u64 - 2), BundleSource::ComplexProjectiveLemma)
        }
        (Regime::Complex, ManifoldSpec::Euclid(m)) if k > 2 && is_prime(k as u64) => {
            let v = ((*m as u64 - 1) / 2) * (k as u64 - 1);
            profile(TopDegree::AtLeast(v), BundleSource::ComplexEuclideanLemma)
        }
        _ => Err(not_determined(spec, k, regime)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_examples() {
        let p = lambda_top(&ManifoldSpec::RealProj(5), 2, Regime::Real).unwrap();
        assert_eq!(p.top_degree, TopDegree::Exact(7));
        for m in 2..20 {
            let s = lambda_top(&ManifoldSpec::Sphere(m), 2, Regime::Real).unwrap();
            assert_eq!(s.top_degree, TopDegree::Exact(m as u64));
        }
        let r2 = lambda_top(&ManifoldSpec::Euclid(2), 8, Regime::Real).unwrap();
        assert_eq!(r2.top_degree, TopDegree::Exact(7));
        assert_eq!(r2.source, BundleSource::PlaneLemma);
    }

    #[test]
    fn complex_examples() {
        let s5 = lambda_top(&ManifoldSpec::Sphere(5), 2, Regime::Complex).unwrap();
        assert_eq!(s5.top_degree, TopDegree::Exact(2));
        let cp4 = lambda_top(&ManifoldSpec::ComplexProj(4), 2, Regime::Complex).unwrap();
        assert_eq!(cp4.top_degree, TopDegree::AtLeast(6));
        assert!(!cp4.top_degree.is_exact());
        let r3 = lambda_top(&ManifoldSpec::Euclid(3), 3, Regime::Complex).unwrap();
        assert_eq!(r3.top_degree, TopDegree::AtLeast(2));
    }

    #[test]
    fn unsupported_combinations_are_refused() {
        let cases = [
            (ManifoldSpec::RealProj(5), 3, Regime::Real),
            (ManifoldSpec::Euclid(2), 6, Regime::Real),
            (ManifoldSpec::Euclid(3), 2, Regime::Real),
            (ManifoldSpec::ComplexProj(3), 2, Regime::Complex),
            (ManifoldSpec::RealProj(4), 2, Regime::Complex),
            (ManifoldSpec::Euclid(3), 2, Regime::Complex),
        ];
        for (spec, k, regime) in cases {
            assert!(matches!(lambda_top(&spec, k, regime), Err(Error::NotDetermined(_))), "{spec}");
        }
        assert!(lambda_top(&ManifoldSpec::Sphere(3), 1, Regime::Real).is_err());
    }

    #[test]
    fn regime_parses() {
        assert_eq!("complex".parse::<Regime>().unwrap(), Regime::Complex);
        assert!("quaternionic".parse::<Regime>().is_err());
    }
}
