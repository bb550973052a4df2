//! Randomized checks of the explicit regular maps: the complex Vandermonde
//! curve, the sphere map `x -> (1, x)` and block sums of those.
//!
//! Trial `t` draws its points from a ChaCha8 stream keyed by `(seed, t)`, so
//! a report depends only on the seed, never on scheduling.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::field::Rationals;
use crate::linalg::{bareiss_rank, rank};

/// Singular values below this fraction of the largest one count as zero.
pub const RELATIVE_TOLERANCE: f64 = 1e-8;
/// Sampled points closer than this are redrawn.
pub const MIN_SEPARATION: f64 = 1e-3;
/// Gaussian-rational samples have coordinates in `[-1, 1]` with this
/// denominator.
const DENOMINATOR: i64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ExampleMap {
    /// `C -> R^(2k-1)`, `z -> (1, z, ..., z^(k-1))`, claimed k-regular.
    Vandermonde(u32),
    /// `S^m -> R^(m+2)`, `x -> (1, x)`, claimed 3-regular.
    SphereOneI(u32),
    /// Block-diagonal sum of maps on a disjoint union.
    DirectSum(Vec<ExampleMap>),
}

impl ExampleMap {
    pub fn ambient_dimension(&self) -> usize {
        match self {
            ExampleMap::Vandermonde(k) => 2 * *k as usize - 1,
            ExampleMap::SphereOneI(m) => *m as usize + 2,
            ExampleMap::DirectSum(maps) => maps.iter().map(ExampleMap::ambient_dimension).sum(),
        }
    }

    /// The non-sum blocks, in order.
    pub fn blocks(&self) -> Vec<&ExampleMap> {
        match self {
            ExampleMap::DirectSum(maps) => maps.iter().flat_map(ExampleMap::blocks).collect(),
            leaf => vec![leaf],
        }
    }

    /// Claimed regularity of each block.
    pub fn claimed_regularity(&self) -> Vec<u32> {
        self.blocks()
            .into_iter()
            .map(|b| match *b {
                ExampleMap::Vandermonde(k) => k,
                ExampleMap::SphereOneI(_) => 3,
                ExampleMap::DirectSum(_) => unreachable!(),
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        for b in self.blocks() {
            match *b {
                ExampleMap::Vandermonde(k) if k < 1 => {
                    return Err(Error::InvalidArgument("Vandermonde map needs k >= 1".into()))
                }
                ExampleMap::SphereOneI(m) if m < 1 => {
                    return Err(Error::InvalidArgument("sphere map needs m >= 1".into()))
                }
                _ => {}
            }
        }
        if self.blocks().is_empty() {
            return Err(Error::InvalidArgument("empty direct sum".into()));
        }
        Ok(())
    }
}

impl fmt::Display for ExampleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleMap::Vandermonde(k) => write!(f, "vandermonde({k})"),
            ExampleMap::SphereOneI(m) => write!(f, "sphere({m})"),
            ExampleMap::DirectSum(maps) => {
                let parts: Vec<String> = maps.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" (+) "))
            }
        }
    }
}

/// `re + im * i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    fn ratio(re: i64, im: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(re.into(), den.into()),
            BigRational::new(im.into(), den.into()),
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if self.im.is_negative() {
            write!(f, " - {}i", -&self.im)
        } else {
            write!(f, " + {}i", self.im)
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Integer row proportional to the realified image of `z`: the point is
/// written as `(a + bi) / d` and the row scaled by `d^(k-1)`.
fn vandermonde_row(z: &GaussianRational, k: u32) -> Vec<BigInt> {
    let d = z.re.denom().lcm(z.im.denom());
    let a = z.re.numer() * (&d / z.re.denom());
    let b = z.im.numer() * (&d / z.im.denom());
    let mut row = Vec::with_capacity(2 * k as usize - 1);
    let (mut wr, mut wi) = (BigInt::one(), BigInt::zero());
    for j in 0..k {
        let scale = num_traits::pow(d.clone(), (k - 1 - j) as usize);
        if j == 0 {
            row.push(scale);
        } else {
            row.push(&wr * &scale);
            row.push(&wi * &scale);
        }
        let next_r = &wr * &a - &wi * &b;
        wi = &wr * &b + &wi * &a;
        wr = next_r;
    }
    row
}

/// Exact rank of the images of `points` under the Vandermonde map with `k`
/// coordinates.
pub fn vandermonde_rank_exact(points: &[GaussianRational], k: u32) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::RepeatedPoints);
        }
    }
    Ok(bareiss_rank(points.iter().map(|z| vandermonde_row(z, k)).collect()))
}

/// `prod_{i<j} (z_j - z_i)` is nonzero; exact confirmation that a tuple of
/// at most `k` Vandermonde points has full rank.
pub fn vandermonde_determinant_nonzero(points: &[GaussianRational]) -> bool {
    // clear denominators once so the product stays in Z[i]
    let d = points.iter().fold(BigInt::one(), |acc, z| acc.lcm(z.re.denom()).lcm(z.im.denom()));
    let ints: Vec<(BigInt, BigInt)> = points
        .iter()
        .map(|z| (z.re.numer() * (&d / z.re.denom()), z.im.numer() * (&d / z.im.denom())))
        .collect();
    let (mut re, mut im) = (BigInt::one(), BigInt::zero());
    for (j, zj) in ints.iter().enumerate() {
        for zi in &ints[..j] {
            let (dr, di) = (&zj.0 - &zi.0, &zj.1 - &zi.1);
            let next_re = &re * &dr - &im * &di;
            im = &re * &di + &im * &dr;
            re = next_re;
        }
    }
    !(re.is_zero() && im.is_zero())
}

/// Rank of row vectors in floating point, with singular values below
/// `RELATIVE_TOLERANCE * sigma_max` treated as zero. Also returns
/// `sigma_min / sigma_max` over the first `rows` singular values.
pub fn float_rank(rows: &[Vec<f64>]) -> (usize, f64) {
    if rows.is_empty() {
        return (0, 1.0);
    }
    let (r, c) = (rows.len(), rows[0].len());
    let m = DMatrix::from_row_iterator(r, c, rows.iter().flatten().copied());
    let sv = m.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return (0, 0.0);
    }
    let rank = sv.iter().filter(|&&s| s > RELATIVE_TOLERANCE * max).count();
    let min = if r > c { 0.0 } else { sv.iter().copied().fold(f64::INFINITY, f64::min) };
    (rank, min / max)
}

fn sphere_row(x: &[f64]) -> Vec<f64> {
    std::iter::once(1.0).chain(x.iter().copied()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BlockPoints {
    Gaussian(Vec<GaussianRational>),
    Sphere(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub trial: u64,
    pub points: Vec<BlockPoints>,
    pub rank: usize,
    pub needed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    NoViolationFound,
    Counterexample { witness: Witness },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityReport {
    pub map: String,
    pub ambient_dimension: usize,
    pub tuple_sizes: Vec<u32>,
    pub seed: u64,
    pub trials: u64,
    /// Trials whose rank was computed exactly in every block.
    pub exact_trials: u64,
    /// Exact trials additionally confirmed by a nonzero Vandermonde
    /// determinant in every block.
    pub determinant_confirmed: u64,
    pub violations: u64,
    /// Smallest `sigma_min / sigma_max` seen on floating-point blocks.
    pub min_singular_ratio: Option<f64>,
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl RegularityReport {
    pub fn is_counterexample(&self) -> bool {
        matches!(self.verdict, Verdict::Counterexample { .. })
    }
}

struct TrialOutcome {
    rank: usize,
    needed: usize,
    exact: bool,
    confirmed: bool,
    min_ratio: Option<f64>,
    points: Vec<BlockPoints>,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn sample_gaussian(rng: &mut ChaCha8Rng, count: usize) -> Vec<GaussianRational> {
    let min_sq = (MIN_SEPARATION * DENOMINATOR as f64).powi(2);
    let mut raw: Vec<(i64, i64)> = Vec::with_capacity(count);
    while raw.len() < count {
        let p = (rng.random_range(-DENOMINATOR..=DENOMINATOR), rng.random_range(-DENOMINATOR..=DENOMINATOR));
        let far = raw.iter().all(|q| {
            let (dx, dy) = ((p.0 - q.0) as f64, (p.1 - q.1) as f64);
            dx * dx + dy * dy >= min_sq
        });
        if far {
            raw.push(p);
        }
    }
    raw.into_iter().map(|(a, b)| GaussianRational::ratio(a, b, DENOMINATOR)).collect()
}

fn sample_sphere(rng: &mut ChaCha8Rng, m: u32, count: usize) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(count);
    while pts.len() < count {
        let v: Vec<f64> = (0..=m).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            continue;
        }
        let x: Vec<f64> = v.into_iter().map(|c| c / norm).collect();
        let far = pts.iter().all(|y| {
            x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt() >= MIN_SEPARATION
        });
        if far {
            pts.push(x);
        }
    }
    pts
}

fn block_rank(block: &ExampleMap, points: &BlockPoints) -> (usize, bool, bool, Option<f64>) {
    match (block, points) {
        (ExampleMap::Vandermonde(k), BlockPoints::Gaussian(zs)) => {
            let r = bareiss_rank(zs.iter().map(|z| vandermonde_row(z, *k)).collect());
            let confirmed = zs.len() <= *k as usize && vandermonde_determinant_nonzero(zs);
            (r, true, confirmed, None)
        }
        (ExampleMap::SphereOneI(_), BlockPoints::Sphere(xs)) => {
            let rows: Vec<Vec<f64>> = xs.iter().map(|x| sphere_row(x)).collect();
            let (r, ratio) = float_rank(&rows);
            (r, false, false, Some(ratio))
        }
        _ => unreachable!("points are sampled per block kind"),
    }
}

fn run_trial(map: &ExampleMap, sizes: &[u32], seed: u64, trial: u64) -> TrialOutcome {
    let mut rng = trial_rng(seed, trial);
    let mut out = TrialOutcome {
        rank: 0,
        needed: sizes.iter().sum::<u32>() as usize,
        exact: true,
        confirmed: true,
        min_ratio: None,
        points: Vec::new(),
    };
    for (block, &size) in map.blocks().into_iter().zip(sizes) {
        let pts = match *block {
            ExampleMap::Vandermonde(_) => BlockPoints::Gaussian(sample_gaussian(&mut rng, size as usize)),
            ExampleMap::SphereOneI(m) => BlockPoints::Sphere(sample_sphere(&mut rng, m, size as usize)),
            ExampleMap::DirectSum(_) => unreachable!(),
        };
        // block-diagonal: the rank is the sum of the block ranks
        let (r, exact, confirmed, ratio) = block_rank(block, &pts);
        out.rank += r;
        out.exact &= exact;
        out.confirmed &= confirmed;
        if let Some(q) = ratio {
            out.min_ratio = Some(out.min_ratio.map_or(q, |p: f64| p.min(q)));
        }
        out.points.push(pts);
    }
    out.confirmed &= out.exact;
    out
}

/// Re-evaluates the rank of a witness.
pub fn witness_rank(map: &ExampleMap, witness: &Witness) -> usize {
    map.blocks().into_iter().zip(&witness.points).map(|(b, p)| block_rank(b, p).0).sum()
}

/// Samples `trials` tuples with `sizes[i]` distinct points on block `i` and
/// checks that their images are linearly independent.
pub fn sample_check_regular(
    map: &ExampleMap,
    sizes: &[u32],
    trials: u64,
    seed: u64,
    strategy: Strategy,
) -> Result<RegularityReport> {
    map.validate()?;
    let claimed = map.claimed_regularity();
    if sizes.len() != claimed.len() {
        return Err(Error::InvalidArgument(format!(
            "{} tuple sizes given for {} blocks",
            sizes.len(),
            claimed.len()
        )));
    }
    let mut warnings = Vec::new();
    for (i, (&s, &c)) in sizes.iter().zip(&claimed).enumerate() {
        if s > c {
            warnings.push(format!("block {i}: tuple size {s} exceeds the claimed regularity {c}"));
        }
    }
    let outcomes = exec::map_range(strategy, trials as usize, |t| run_trial(map, sizes, seed, t as u64));

    let mut report = RegularityReport {
        map: map.to_string(),
        ambient_dimension: map.ambient_dimension(),
        tuple_sizes: sizes.to_vec(),
        seed,
        trials,
        exact_trials: 0,
        determinant_confirmed: 0,
        violations: 0,
        min_singular_ratio: None,
        warnings,
        verdict: Verdict::NoViolationFound,
    };
    for (t, o) in outcomes.into_iter().enumerate() {
        report.exact_trials += o.exact as u64;
        report.determinant_confirmed += o.confirmed as u64;
        if let Some(q) = o.min_ratio {
            report.min_singular_ratio = Some(report.min_singular_ratio.map_or(q, |p: f64| p.min(q)));
        }
        if o.rank < o.needed {
            report.violations += 1;
            if report.violations == 1 {
                report.verdict = Verdict::Counterexample {
                    witness: Witness { trial: t as u64, points: o.points, rank: o.rank, needed: o.needed },
                };
            }
        }
    }
    Ok(report)
}

/// Rational points of `S^m` on the great circle through `e_1` and `e_2`,
/// from the parametrization `t -> ((1-t^2)/(1+t^2), 2t/(1+t^2))`, plus the
/// coordinate points `+-e_i`.
fn rational_sphere_points(m: u32) -> Vec<Vec<BigRational>> {
    let int = |v: i64| BigRational::from_integer(v.into());
    let mut params = vec![int(0), int(1), int(-1), int(2), int(-2)];
    params.extend([(1, 2), (-1, 2), (1, 3), (3, 2)].map(|(a, b)| BigRational::new(a.into(), b.into())));
    let mut pts = Vec::new();
    for t in params {
        let den = int(1) + &t * &t;
        let mut x = vec![int(0); m as usize + 1];
        x[0] = (int(1) - &t * &t) / &den;
        x[1] = (int(2) * &t) / &den;
        pts.push(x);
    }
    for i in 2..=m as usize {
        for s in [1, -1] {
            let mut x = vec![int(0); m as usize + 1];
            x[i] = int(s);
            pts.push(x);
        }
    }
    pts.dedup();
    pts
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == k {
            return f(acc);
        }
        for i in start..n {
            acc.push(i);
            if go(i + 1, n, k, acc, f) {
                return true;
            }
            acc.pop();
        }
        false
    }
    go(0, n, k, &mut Vec::with_capacity(k), &mut f)
}

/// Brute-force search over small rational point sets of `S^m` for `k`
/// distinct points whose images under `x -> (1, x)` are dependent. The rank
/// is computed exactly.
pub fn sphere_counterexample(m: u32, k: u32) -> Option<Vec<Vec<BigRational>>> {
    let pts = rational_sphere_points(m);
    let mut found = None;
    combinations(pts.len(), k as usize, |idx| {
        let rows: Vec<Vec<BigRational>> = idx
            .iter()
            .map(|&i| std::iter::once(BigRational::one()).chain(pts[i].iter().cloned()).collect())
            .collect();
        if rank(&Rationals, m as usize + 2, rows) < k as usize {
            found = Some(idx.iter().map(|&i| pts[i].clone()).collect());
            true
        } else {
            false
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vandermonde_examples() {
        let g = GaussianRational::from_ints;
        assert_eq!(vandermonde_rank_exact(&[g(0, 0), g(1, 0), g(0, 1)], 3).unwrap(), 3);
        assert_eq!(vandermonde_rank_exact(&[g(0, 0), g(1, 0)], 2).unwrap(), 2);
        assert_eq!(vandermonde_rank_exact(&[g(0, 0), g(1, 0), g(0, 1), g(1, 1)], 4).unwrap(), 4);
        assert_eq!(vandermonde_rank_exact(&[g(2, 0), g(3, 0), g(5, 0)], 3).unwrap(), 3);
        assert_eq!(vandermonde_rank_exact(&[g(1, 1), g(1, 1)], 2), Err(Error::RepeatedPoints));
    }

    #[test]
    fn too_many_vandermonde_points_are_dependent() {
        // k = 2 lands in R^3, so four points cannot be independent
        let g = GaussianRational::from_ints;
        assert_eq!(vandermonde_rank_exact(&[g(0, 0), g(1, 0), g(0, 1), g(1, 1)], 2).unwrap(), 3);
    }

    #[test]
    fn vandermonde_rows_are_scaled_images() {
        // z = (1 + 2i)/2, k = 3: (1, z, z^2) = (1, 1/2, 1, -3/4, 1), scaled by 4
        let z = GaussianRational::ratio(1, 2, 2);
        let row: Vec<i64> = vandermonde_row(&z, 3).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(row, vec![4, 2, 4, -3, 4]);
    }

    #[test]
    fn sphere_pairs_are_independent() {
        let r = sample_check_regular(&ExampleMap::SphereOneI(3), &[2], 200, 1, Strategy::Sequential).unwrap();
        assert_eq!(r.verdict, Verdict::NoViolationFound);
        assert!(r.min_singular_ratio.unwrap() > 0.0);
    }

    #[test]
    fn oversized_tuples_warn_and_fail() {
        let r = sample_check_regular(&ExampleMap::SphereOneI(2), &[5], 20, 3, Strategy::Sequential).unwrap();
        assert_eq!(r.violations, 20);
        assert_eq!(r.warnings.len(), 1);
        let Verdict::Counterexample { witness } = &r.verdict else { panic!() };
        assert_eq!(witness.trial, 0);
        assert!(witness_rank(&ExampleMap::SphereOneI(2), witness) < witness.needed);
    }

    #[test]
    fn great_circle_counterexample() {
        let pts = sphere_counterexample(2, 4).expect("four points on a great circle");
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|x| x[2].is_zero()));
        assert!(sphere_counterexample(2, 3).is_none());
    }

    #[test]
    fn direct_sum_dimension_and_blocks() {
        let map = ExampleMap::DirectSum(vec![
            ExampleMap::Vandermonde(3),
            ExampleMap::DirectSum(vec![ExampleMap::SphereOneI(4)]),
        ]);
        assert_eq!(map.ambient_dimension(), 5 + 6);
        assert_eq!(map.claimed_regularity(), vec![3, 3]);
        let r = sample_check_regular(&map, &[3, 3], 100, 9, Strategy::Sequential).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.exact_trials, 0);
        assert!(sample_check_regular(&map, &[3], 1, 9, Strategy::Sequential).is_err());
    }

    #[test]
    fn same_seed_same_report() {
        let map = ExampleMap::Vandermonde(4);
        let a = sample_check_regular(&map, &[4], 300, 42, Strategy::Sequential).unwrap();
        let b = sample_check_regular(&map, &[4], 300, 42, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.determinant_confirmed, 300);
    }
}
