//! Spheres, projective spaces, Euclidean spaces and their products, with
//! their mod-2 tangent classes.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::digits::floor_log2;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::series::{GradedSeries, Generator, SeriesRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ManifoldSpec {
    Sphere(u32),
    RealProj(u32),
    ComplexProj(u32),
    QuatProj(u32),
    Euclid(u32),
    /// At least two factors, none of them a product.
    Product(Vec<ManifoldSpec>),
}

impl ManifoldSpec {
    /// Flattens nested products; a single factor is returned as itself.
    pub fn product(factors: Vec<ManifoldSpec>) -> Result<Self> {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                ManifoldSpec::Product(inner) => flat.extend(inner),
                atom => flat.push(atom),
            }
        }
        match flat.len() {
            0 => Err(Error::InvalidArgument("empty product".into())),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(ManifoldSpec::Product(flat)),
        }
    }

    /// Checks the dimension constraints: `m >= 2` for the closed families,
    /// `m >= 1` for Euclidean space.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::Semantic { atom: self.to_string(), message: msg.to_string() })
        };
        match *self {
            ManifoldSpec::Sphere(m)
            | ManifoldSpec::RealProj(m)
            | ManifoldSpec::ComplexProj(m)
            | ManifoldSpec::QuatProj(m)
                if m < 2 =>
            {
                bad("dimension parameter must be at least 2")
            }
            ManifoldSpec::Euclid(0) => bad("dimension must be at least 1"),
            ManifoldSpec::Product(ref fs) => {
                if fs.len() < 2 {
                    return bad("a product needs at least two factors");
                }
                for f in fs {
                    if matches!(f, ManifoldSpec::Product(_)) {
                        return bad("nested product");
                    }
                    f.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn factors(&self) -> &[ManifoldSpec] {
        match self {
            ManifoldSpec::Product(fs) => fs,
            atom => std::slice::from_ref(atom),
        }
    }

    /// Real dimension.
    pub fn dimension(&self) -> u32 {
        match *self {
            ManifoldSpec::Sphere(m) | ManifoldSpec::RealProj(m) | ManifoldSpec::Euclid(m) => m,
            ManifoldSpec::ComplexProj(m) => 2 * m,
            ManifoldSpec::QuatProj(m) => 4 * m,
            ManifoldSpec::Product(ref fs) => fs.iter().map(ManifoldSpec::dimension).sum(),
        }
    }

    /// Closed (compact, no boundary) and connected.
    pub fn is_closed(&self) -> bool {
        self.factors().iter().all(|f| !matches!(f, ManifoldSpec::Euclid(_)))
    }

    pub fn is_product(&self) -> bool {
        matches!(self, ManifoldSpec::Product(_))
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldSpec::Sphere(m) => write!(f, "S^{m}"),
            ManifoldSpec::RealProj(m) => write!(f, "RP^{m}"),
            ManifoldSpec::ComplexProj(m) => write!(f, "CP^{m}"),
            ManifoldSpec::QuatProj(m) => write!(f, "HP^{m}"),
            ManifoldSpec::Euclid(m) => write!(f, "R^{m}"),
            ManifoldSpec::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Generator of the mod-2 cohomology of an atom: name stem, degree and
/// nilpotency bound. Euclidean space has no positive-degree cohomology.
fn atom_generator(atom: &ManifoldSpec) -> Option<(&'static str, u32, u32)> {
    match *atom {
        ManifoldSpec::Sphere(m) => Some(("s", m, 1)),
        ManifoldSpec::RealProj(m) => Some(("a", 1, m)),
        ManifoldSpec::ComplexProj(m) => Some(("b", 2, m)),
        ManifoldSpec::QuatProj(m) => Some(("d", 4, m)),
        ManifoldSpec::Euclid(_) => None,
        ManifoldSpec::Product(_) => unreachable!("atoms only"),
    }
}

/// The mod-2 cohomology ring of the spec: one generator per factor with
/// cohomology, truncated at the total dimension. Returns the ring and, per
/// factor, the index of its generator.
pub fn cohomology_ring(spec: &ManifoldSpec) -> (Arc<SeriesRing<PrimeField>>, Vec<Option<usize>>) {
    let factors = spec.factors();
    let single = factors.len() == 1;
    let mut gens = Vec::new();
    let mut index = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        match atom_generator(f) {
            Some((stem, deg, cap)) => {
                let name = if single { stem.to_string() } else { format!("{stem}{}", i + 1) };
                index.push(Some(gens.len()));
                gens.push(Generator::nilpotent(name, deg, cap));
            }
            None => index.push(None),
        }
    }
    (SeriesRing::new(PrimeField::two(), gens, spec.dimension()), index)
}

/// Total Stiefel–Whitney class. Spheres and Euclidean spaces contribute 1;
/// `P^m` over R, C, H contributes `(1 + x)^(m+1)`.
pub fn total_sw(spec: &ManifoldSpec) -> GradedSeries<PrimeField> {
    let (ring, index) = cohomology_ring(spec);
    let mut total = GradedSeries::one(&ring);
    for (f, idx) in spec.factors().iter().zip(index) {
        let exponent = match *f {
            ManifoldSpec::RealProj(m) | ManifoldSpec::ComplexProj(m) | ManifoldSpec::QuatProj(m) => {
                m + 1
            }
            _ => continue,
        };
        let x = GradedSeries::generator(&ring, idx.expect("projective factors have a generator"));
        let factor = GradedSeries::one(&ring).add(&x).expect("same ring").pow(exponent);
        total = total.mul(&factor).expect("same ring");
    }
    total
}

/// Dual Stiefel–Whitney class, the inverse of [`total_sw`].
pub fn dual_sw(spec: &ManifoldSpec) -> GradedSeries<PrimeField> {
    total_sw(spec).invert().expect("total classes have constant term 1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    BruteForce,
    ClosedForm,
}

/// Largest `q` with `wbar_q(M) != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualClassProfile {
    pub spec: ManifoldSpec,
    pub q: u32,
    pub method: Method,
}

/// `q` read off from the inverted total class.
pub fn top_dual_degree(spec: &ManifoldSpec) -> DualClassProfile {
    let q = dual_sw(spec).top_degree().unwrap_or(0);
    DualClassProfile { spec: spec.clone(), q, method: Method::BruteForce }
}

/// `q` of one atom from the binary expansion of `m`: with
/// `2^j <= m < 2^(j+1)`, `q` is `2^(j+1) - m - 1` for `RP^m`, twice that for
/// `CP^m` and four times that for `HP^m`.
pub fn atom_q_closed_form(atom: &ManifoldSpec) -> u32 {
    let base = |m: u32| (1u32 << (floor_log2(m as u64) + 1)) - m - 1;
    match *atom {
        ManifoldSpec::Sphere(_) | ManifoldSpec::Euclid(_) => 0,
        ManifoldSpec::RealProj(m) => base(m),
        ManifoldSpec::ComplexProj(m) => 2 * base(m),
        ManifoldSpec::QuatProj(m) => 4 * base(m),
        ManifoldSpec::Product(_) => unreachable!("atoms only"),
    }
}

/// Closed form for `q`, summed over product factors.
pub fn top_dual_degree_closed_form(spec: &ManifoldSpec) -> DualClassProfile {
    let q = spec.factors().iter().map(atom_q_closed_form).sum();
    DualClassProfile { spec: spec.clone(), q, method: Method::ClosedForm }
}
