//! Lower bounds on the ambient dimension of regular maps, and the matching
//! existence results where they are known.

use std::fmt;

use serde::Serialize;

use crate::bundles::{lambda_top, BundleProfile, Regime, TopDegree};
use crate::digits::{digit_sum_base_p, floor_log2, is_power_of};
use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::manifold::{top_dual_degree, ManifoldSpec};
use crate::table;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Piece {
    pub spec: ManifoldSpec,
    pub points: u32,
}

impl Piece {
    pub fn new(spec: ManifoldSpec, points: u32) -> Self {
        Self { spec, points }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.spec, self.points)
    }
}

/// A disjoint union of manifolds with a number of points on each piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RegularQuery {
    pub pieces: Vec<Piece>,
    pub regime: Regime,
}

impl RegularQuery {
    pub fn new(pieces: Vec<Piece>, regime: Regime) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidArgument("a query needs at least one piece".into()));
        }
        for p in &pieces {
            p.spec.validate()?;
            if p.points < 2 {
                return Err(Error::InvalidArgument(format!("{p}: need at least 2 points")));
            }
        }
        Ok(Self { pieces, regime })
    }

    pub fn real(pieces: Vec<Piece>) -> Result<Self> {
        Self::new(pieces, Regime::Real)
    }

    pub fn complex(pieces: Vec<Piece>) -> Result<Self> {
        Self::new(pieces, Regime::Complex)
    }
}

impl fmt::Display for RegularQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    MainTheoremI,
    MainTheoremII,
    DisjointObstruction,
    ComplexSphere,
    ComplexProjective,
    ComplexEuclidean,
    ComplexDisjoint,
    BlzReal,
    BclzPRegular,
    BclzPrimePower,
    HandelDisjoint,
    NpRegular,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::MainTheoremI => "Main Theorem I",
            Theorem::MainTheoremII => "Main Theorem II",
            Theorem::DisjointObstruction => "disjoint-union obstruction",
            Theorem::ComplexSphere => "complex sphere proposition",
            Theorem::ComplexProjective => "complex CP^m proposition",
            Theorem::ComplexEuclidean => "complex Euclidean proposition",
            Theorem::ComplexDisjoint => "complex disjoint-union obstruction",
            Theorem::BlzReal => "Blagojevic-Luck-Ziegler real bound",
            Theorem::BclzPRegular => "Blagojevic-Cohen-Luck-Ziegler p-regular bound",
            Theorem::BclzPrimePower => "Blagojevic-Cohen-Luck-Ziegler prime-power bound",
            Theorem::HandelDisjoint => "Handel disjoint-union bound",
            Theorem::NpRegular => "complex np-regular bound",
        }
    }
}

impl Serialize for Theorem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One additive term of a bound: a top degree plus a number of points, or
/// a bare formula value for the cited bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub piece: String,
    pub top_degree: Option<TopDegree>,
    pub points: u64,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Existence {
    pub dimension: u64,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tightness {
    pub upper: Existence,
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bound: u64,
    pub theorem: Theorem,
    pub breakdown: Vec<Contribution>,
    pub tightness: Option<Tightness>,
}

impl BoundReport {
    fn from_breakdown(theorem: Theorem, breakdown: Vec<Contribution>) -> Self {
        let bound = breakdown.iter().map(|c| c.value).sum();
        Self { bound, theorem, breakdown, tightness: None }
    }

    fn with_existence(mut self, existence: Option<Existence>) -> Self {
        self.tightness = existence.map(|upper| Tightness { tight: upper.dimension == self.bound, upper });
        self
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N >= {} ({})", self.bound, self.theorem)
    }
}

fn contribution(profile: &BundleProfile) -> Contribution {
    let points = profile.points as u64;
    Contribution {
        piece: format!("({},{})", profile.spec, profile.points),
        top_degree: Some(profile.top_degree),
        points,
        value: profile.top_degree.value() + points,
    }
}

fn log2(m: u32) -> u32 {
    floor_log2(m as u64)
}

/// The closed form of Main Theorem I:
/// `sum m_{1,i} + sum 2^([log m]+1) + sum 2^([log m]+2) + sum 2^([log m]+3)
///  - k_2 - 2 k_3 - 4 k_4 + 2`.
pub fn main_theorem_i_closed_form(spec: &ManifoldSpec) -> Result<u64> {
    let mut total: i64 = 2;
    for f in spec.factors() {
        total += match *f {
            ManifoldSpec::Sphere(m) => m as i64,
            ManifoldSpec::RealProj(m) => (1i64 << (log2(m) + 1)) - 1,
            ManifoldSpec::ComplexProj(m) => (1i64 << (log2(m) + 2)) - 2,
            ManifoldSpec::QuatProj(m) => (1i64 << (log2(m) + 3)) - 4,
            _ => {
                return Err(Error::UnsupportedPiece {
                    piece: f.to_string(),
                    reason: "products must consist of spheres and projective spaces".into(),
                })
            }
        };
    }
    Ok(total as u64)
}

/// Lower bound for 2-regular maps of a product of spheres and projective
/// spaces. A single factor is accepted as a one-term product.
pub fn bound_product_2regular(spec: &ManifoldSpec) -> Result<BoundReport> {
    spec.validate()?;
    let closed = main_theorem_i_closed_form(spec)?;
    let profile = lambda_top(spec, 2, Regime::Real)?;
    let report = BoundReport::from_breakdown(Theorem::MainTheoremI, vec![contribution(&profile)]);
    if report.bound != closed {
        return Err(Error::InvalidArgument(format!(
            "closed form {closed} disagrees with lambda + 2 = {}",
            report.bound
        )));
    }
    Ok(report.with_existence(upper_existence_spec(spec, 2)))
}

fn in_main_theorem_ii_family(p: &Piece) -> bool {
    match p.spec {
        ManifoldSpec::Euclid(2) => is_power_of(p.points as u64, 2),
        ManifoldSpec::Sphere(_)
        | ManifoldSpec::RealProj(_)
        | ManifoldSpec::ComplexProj(_)
        | ManifoldSpec::QuatProj(_) => p.points == 2,
        _ => false,
    }
}

/// The closed form of Main Theorem II, or `None` when some piece lies
/// outside its family.
pub fn main_theorem_ii_closed_form(query: &RegularQuery) -> Option<u64> {
    if query.regime != Regime::Real || !query.pieces.iter().all(in_main_theorem_ii_family) {
        return None;
    }
    let mut total: i64 = 0;
    for p in &query.pieces {
        total += match p.spec {
            ManifoldSpec::Euclid(_) => (1i64 << (log2(p.points) + 1)) - 1,
            ManifoldSpec::Sphere(m) => m as i64 + 2,
            ManifoldSpec::RealProj(m) => (1i64 << (log2(m) + 1)) + 1,
            ManifoldSpec::ComplexProj(m) => 1i64 << (log2(m) + 2),
            ManifoldSpec::QuatProj(m) => (1i64 << (log2(m) + 3)) - 2,
            ManifoldSpec::Product(_) => unreachable!(),
        };
    }
    Some(total as u64)
}

fn piece_profiles(query: &RegularQuery) -> Result<Vec<BundleProfile>> {
    query
        .pieces
        .iter()
        .map(|p| {
            lambda_top(&p.spec, p.points, query.regime).map_err(|e| Error::UnsupportedPiece {
                piece: p.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

/// `N >= sum (lambda_i + k_i)` for a real disjoint union.
pub fn bound_disjoint(query: &RegularQuery) -> Result<BoundReport> {
    if query.regime != Regime::Real {
        return Err(Error::InvalidArgument("bound_disjoint handles the real regime".into()));
    }
    let profiles = piece_profiles(query)?;
    let breakdown = profiles.iter().map(contribution).collect();
    let theorem = match main_theorem_ii_closed_form(query) {
        Some(_) => Theorem::MainTheoremII,
        None => Theorem::DisjointObstruction,
    };
    let report = BoundReport::from_breakdown(theorem, breakdown);
    if let Some(closed) = main_theorem_ii_closed_form(query) {
        if closed != report.bound {
            return Err(Error::InvalidArgument(format!(
                "closed form {closed} disagrees with the piecewise sum {}",
                report.bound
            )));
        }
    }
    Ok(report.with_existence(upper_existence_query(query)))
}

/// `N >= sum (tau_i + k_i)` for a complex disjoint union.
pub fn bound_complex_disjoint(query: &RegularQuery) -> Result<BoundReport> {
    if query.regime != Regime::Complex {
        return Err(Error::InvalidArgument("bound_complex_disjoint handles the complex regime".into()));
    }
    let profiles = piece_profiles(query)?;
    let theorem = match query.pieces.as_slice() {
        [p] if matches!(p.spec, ManifoldSpec::Sphere(_)) => Theorem::ComplexSphere,
        [p] if matches!(p.spec, ManifoldSpec::ComplexProj(_)) => Theorem::ComplexProjective,
        ps if ps.iter().all(|p| matches!(p.spec, ManifoldSpec::Euclid(_)))
            && ps.iter().all(|p| p.points == ps[0].points) =>
        {
            Theorem::ComplexEuclidean
        }
        _ => Theorem::ComplexDisjoint,
    };
    Ok(BoundReport::from_breakdown(theorem, profiles.iter().map(contribution).collect()))
}

/// Dispatches on the regime.
pub fn bound_query(query: &RegularQuery) -> Result<BoundReport> {
    match query.regime {
        Regime::Real => bound_disjoint(query),
        Regime::Complex => bound_complex_disjoint(query),
    }
}

/// `sum (m_i + h_i) + 2n` for closed connected pieces with two points each.
pub fn handel_recovery(specs: &[ManifoldSpec]) -> Result<u64> {
    let mut total = 0u64;
    for s in specs {
        s.validate()?;
        if !s.is_closed() {
            return Err(Error::UnsupportedPiece { piece: s.to_string(), reason: "not closed".into() });
        }
        total += s.dimension() as u64 + top_dual_degree(s).q as u64 + 2;
    }
    Ok(total)
}

/// Bounds quoted from the literature, evaluated as stated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CitedBound {
    /// Real k-regular maps of R^m: `m(k - alpha(k)) + alpha(k)`.
    BlzReal { m: u64, k: u64 },
    /// Complex p-regular maps of R^m, p an odd prime: `[(m+1)/2](p-1) + 1`.
    BclzPRegular { m: u64, p: u64 },
    /// Complex k-regular maps of C^m with m a power of the odd prime p:
    /// `m(k - alpha_p(k)) + alpha_p(k)`.
    BclzPrimePower { m: u64, k: u64, p: u64 },
    /// Disjoint union of closed n_i-manifolds with top dual degrees q_i,
    /// two points each: `2k + sum (n_i + q_i)`.
    HandelDisjoint { pieces: Vec<(u64, u64)> },
    /// n copies of (R^m, p), complex: `n([(m+1)/2](p-1) + 1)`.
    NpRegular { n: u64, m: u64, p: u64 },
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")))
    }
}

fn require_positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidArgument(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

fn cited_term(piece: String, value: u64) -> Contribution {
    Contribution { piece, top_degree: None, points: 0, value }
}

pub fn bound_cited(kind: &CitedBound) -> Result<BoundReport> {
    let (theorem, breakdown) = match *kind {
        CitedBound::BlzReal { m, k } => {
            require_positive("m", m)?;
            require_positive("k", k)?;
            let a = digit_sum_base_p(k, 2)?;
            (Theorem::BlzReal, vec![cited_term(format!("(R^{m},{k})"), m * (k - a) + a)])
        }
        CitedBound::BclzPRegular { m, p } => {
            require_positive("m", m)?;
            require_odd_prime(p)?;
            (Theorem::BclzPRegular, vec![cited_term(format!("(R^{m},{p})"), m.div_ceil(2) * (p - 1) + 1)])
        }
        CitedBound::BclzPrimePower { m, k, p } => {
            require_odd_prime(p)?;
            require_positive("k", k)?;
            if !is_power_of(m, p) {
                return Err(Error::InvalidArgument(format!("m = {m} is not a power of {p}")));
            }
            let a = digit_sum_base_p(k, p)?;
            (Theorem::BclzPrimePower, vec![cited_term(format!("(C^{m},{k})"), m * (k - a) + a)])
        }
        CitedBound::HandelDisjoint { ref pieces } => {
            if pieces.is_empty() {
                return Err(Error::InvalidArgument("no pieces".into()));
            }
            let terms = pieces
                .iter()
                .map(|&(n, q)| cited_term(format!("(n={n},q={q})"), n + q + 2))
                .collect();
            (Theorem::HandelDisjoint, terms)
        }
        CitedBound::NpRegular { n, m, p } => {
            require_positive("n", n)?;
            require_positive("m", m)?;
            require_odd_prime(p)?;
            let each = m.div_ceil(2) * (p - 1) + 1;
            let terms = (0..n).map(|_| cited_term(format!("(R^{m},{p})"), each)).collect();
            (Theorem::NpRegular, terms)
        }
    };
    Ok(BoundReport::from_breakdown(theorem, breakdown))
}

/// Smallest ambient dimension for which a `k`-regular map of `spec` is
/// known to exist, if any.
pub fn upper_existence_spec(spec: &ManifoldSpec, k: u32) -> Option<Existence> {
    match *spec {
        ManifoldSpec::Sphere(m) if k <= 3 => Some(Existence {
            dimension: m as u64 + 2,
            source: "sphere example: the map (1, i) is 3-regular".into(),
        }),
        ManifoldSpec::RealProj(m) if k <= 3 => table::lookup(m as u64).map(|hit| Existence {
            dimension: hit.dimension,
            source: format!("table row {} ({})", hit.row, hit.condition),
        }),
        ManifoldSpec::Euclid(2) => Some(Existence {
            dimension: 2 * k as u64 - 1,
            source: "Vandermonde example: z -> (1, z, ..., z^(k-1))".into(),
        }),
        _ => None,
    }
}

/// Existence for a disjoint union by placing piecewise maps in
/// complementary coordinate blocks.
pub fn upper_existence_query(query: &RegularQuery) -> Option<Existence> {
    if query.regime != Regime::Real {
        return None;
    }
    if let [p] = query.pieces.as_slice() {
        return upper_existence_spec(&p.spec, p.points);
    }
    let parts: Option<Vec<Existence>> =
        query.pieces.iter().map(|p| upper_existence_spec(&p.spec, p.points)).collect();
    let parts = parts?;
    Some(Existence {
        dimension: parts.iter().map(|e| e.dimension).sum(),
        source: "direct-sum construction of the piecewise maps".into(),
    })
}
