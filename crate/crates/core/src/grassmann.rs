//! Cohomology of finite Grassmannians as a truncated quotient ring.
//!
//! `H*(G_k(F^{n+1}))` is the polynomial ring on `w_1..w_k` (degree `i`) or
//! `c_1..c_k` (degree `2i`) modulo the dual classes `wbar_j` / `cbar_j` for
//! `n-k+2 <= j <= n+1`, where the dual classes are the graded pieces of the
//! inverse of the total class `1 + w_1 + ... + w_k`.
//!
//! Normal forms come from per-degree row reduction: for each degree `d` the
//! ideal's degree-`d` piece is spanned by `monomial * relation` products,
//! reduced to echelon form with monomials in descending lexicographic order.
//! Non-pivot monomials form the quotient basis. All pieces up to the
//! truncation are computed eagerly, so a presentation is immutable and can be
//! shared across threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::Echelon;
use crate::series::{GradedSeries, Generator, Monomial, SeriesRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassKind {
    /// `w_i` in degree `i`.
    StiefelWhitney,
    /// `c_i` in degree `2i`.
    Chern,
}

impl ClassKind {
    /// Cohomological degree of the first class.
    pub fn unit_degree(self) -> u32 {
        match self {
            ClassKind::StiefelWhitney => 1,
            ClassKind::Chern => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            ClassKind::StiefelWhitney => "w",
            ClassKind::Chern => "c",
        }
    }
}

/// Height of a ring element: the largest `t` with `e^t != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Height {
    Finite(u32),
    /// The element has a nonzero constant term and is never nilpotent.
    Infinite,
}

#[derive(Debug)]
struct Piece<F: Field> {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon<F>,
    basis: Vec<usize>,
}

#[derive(Debug)]
struct Inner<F: Field> {
    k: u32,
    n: u32,
    kind: ClassKind,
    ring: Arc<SeriesRing<F>>,
    relations: Vec<GradedSeries<F>>,
    pieces: Vec<Piece<F>>,
}

/// A presentation of `H*(G_k(F^{n+1}))` truncated at a fixed degree.
#[derive(Clone, Debug)]
pub struct GrassmannPresentation<F: Field> {
    inner: Arc<Inner<F>>,
}

/// Ring of polynomials in the universal classes `x_1..x_k`, truncated.
fn class_ring<F: Field>(field: F, kind: ClassKind, k: u32, truncation: u32) -> Arc<SeriesRing<F>> {
    let gens = (1..=k)
        .map(|i| Generator::new(format!("{}{}", kind.symbol(), i), i * kind.unit_degree()))
        .collect();
    SeriesRing::new(field, gens, truncation)
}

/// The dual classes `xbar_{n-k+2}, ..., xbar_{n+1}` read off from the inverse
/// of `1 + x_1 + ... + x_k` in `ring`.
pub fn relation_generators<F: Field>(
    ring: &Arc<SeriesRing<F>>,
    kind: ClassKind,
    k: u32,
    n: u32,
) -> Result<Vec<GradedSeries<F>>> {
    if k == 0 || n < k {
        return Err(Error::InvalidArgument(format!("need n >= k >= 1, got k={k}, n={n}")));
    }
    let unit = kind.unit_degree();
    let needed = (n + 1) * unit;
    if ring.truncation() < needed {
        return Err(Error::TruncationTooSmall { needed, have: ring.truncation() });
    }
    let mut total = GradedSeries::one(ring);
    for i in 0..k as usize {
        total = total.add(&GradedSeries::generator(ring, i))?;
    }
    let dual = total.invert()?;
    Ok((n - k + 2..=n + 1).map(|j| dual.homogeneous(j * unit)).collect())
}

impl GrassmannPresentation<PrimeField> {
    /// `Z/2[w_1..w_k] / (wbar_{n-k+2}, ..., wbar_{n+1})`.
    pub fn stiefel_whitney(k: u32, n: u32, truncation: u32) -> Result<Self> {
        Self::new(PrimeField::two(), ClassKind::StiefelWhitney, k, n, truncation, Strategy::default())
    }

    /// The Chern presentation with coefficients reduced mod `p`.
    pub fn chern_mod_p(k: u32, n: u32, p: u64, truncation: u32) -> Result<Self> {
        Self::new(PrimeField::new(p)?, ClassKind::Chern, k, n, truncation, Strategy::default())
    }
}

impl GrassmannPresentation<Rationals> {
    /// The integral Chern presentation, decided over the rationals (the
    /// integral cohomology is torsion-free).
    pub fn chern(k: u32, n: u32, truncation: u32) -> Result<Self> {
        Self::new(Rationals, ClassKind::Chern, k, n, truncation, Strategy::default())
    }
}

impl<F: Field> GrassmannPresentation<F> {
    pub fn new(
        field: F,
        kind: ClassKind,
        k: u32,
        n: u32,
        truncation: u32,
        strategy: Strategy,
    ) -> Result<Self> {
        let ring = class_ring(field, kind, k, truncation);
        let relations = relation_generators(&ring, kind, k, n)?;
        let pieces = exec::map_range(strategy, truncation as usize + 1, |d| {
            build_piece(&ring, &relations, d as u32)
        });
        Ok(Self { inner: Arc::new(Inner { k, n, kind, ring, relations, pieces }) })
    }

    /// Top nonzero degree, `dim_R G_k(F^{n+1})`.
    pub fn top_degree(k: u32, n: u32, kind: ClassKind) -> u32 {
        k * (n + 1 - k) * kind.unit_degree()
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    pub fn kind(&self) -> ClassKind {
        self.inner.kind
    }

    pub fn truncation(&self) -> u32 {
        self.inner.ring.truncation()
    }

    /// The polynomial ring the relations live in; use it to build elements.
    pub fn ring(&self) -> &Arc<SeriesRing<F>> {
        &self.inner.ring
    }

    pub fn field(&self) -> &F {
        self.inner.ring.field()
    }

    /// The universal class `x_i`, `1 <= i <= k`.
    pub fn class(&self, i: u32) -> GradedSeries<F> {
        assert!((1..=self.inner.k).contains(&i), "class index out of range");
        GradedSeries::generator(&self.inner.ring, i as usize - 1)
    }

    pub fn relations(&self) -> &[GradedSeries<F>] {
        &self.inner.relations
    }

    /// Monomial basis of the degree-`degree` piece of the quotient.
    pub fn quotient_basis(&self, degree: u32) -> Result<Vec<Monomial>> {
        let piece = self.piece(degree)?;
        Ok(piece.basis.iter().map(|&c| piece.monomials[c].clone()).collect())
    }

    /// Sum of quotient dimensions over all degrees up to the truncation.
    pub fn total_rank(&self) -> usize {
        self.inner.pieces.iter().map(|p| p.basis.len()).sum()
    }

    fn piece(&self, degree: u32) -> Result<&Piece<F>> {
        self.inner.pieces.get(degree as usize).ok_or(Error::TruncationTooSmall {
            needed: degree,
            have: self.truncation(),
        })
    }

    pub fn normal_form(&self, e: &GradedSeries<F>) -> Result<QuotientElement<F>> {
        if **e.ring() != *self.inner.ring {
            return Err(Error::StructureMismatch(
                "element does not live in this presentation's ring".into(),
            ));
        }
        let f = self.field();
        let mut coords = Vec::with_capacity(self.inner.pieces.len());
        let mut dense: Vec<Vec<F::Elem>> = self
            .inner
            .pieces
            .iter()
            .map(|p| vec![f.zero(); p.monomials.len()])
            .collect();
        for (m, c) in e.terms() {
            let d = self.inner.ring.weighted_degree(m) as usize;
            let piece = &self.inner.pieces[d];
            dense[d][piece.index[m]] = c.clone();
        }
        for (piece, v) in self.inner.pieces.iter().zip(dense) {
            let reduced = piece.echelon.reduce(&v);
            coords.push(piece.basis.iter().map(|&c| reduced[c].clone()).collect());
        }
        Ok(QuotientElement { pres: self.clone(), coords })
    }

    /// Height of `e` in the quotient. Vanishing of `e^(t+1)` is only reported
    /// when every term of `e^(t+1)` lies within the truncation.
    pub fn height(&self, e: &GradedSeries<F>) -> Result<Height> {
        let nf = self.normal_form(e)?;
        if nf.is_zero() {
            return Ok(Height::Finite(0));
        }
        if !self.field().is_zero(&e.constant_term()) {
            return Ok(Height::Infinite);
        }
        let top = e.top_degree().expect("nonzero element");
        let trunc = self.truncation();
        let mut power = e.clone();
        let mut t = 1u32;
        loop {
            // power == e^t and normal_form(e^t) != 0
            if (t + 1) * top > trunc {
                return Err(Error::Inconclusive { truncation: trunc, checked: t });
            }
            power = power.mul(e)?;
            if self.normal_form(&power)?.is_zero() {
                return Ok(Height::Finite(t));
            }
            t += 1;
        }
    }

    /// Smallest truncation that lets [`height`](Self::height) certify the
    /// height of an element of degree `element_degree`.
    pub fn truncation_for_height(k: u32, n: u32, kind: ClassKind, element_degree: u32) -> u32 {
        let top = Self::top_degree(k, n, kind);
        let max_height = top / element_degree;
        ((max_height + 1) * element_degree).max((n + 1) * kind.unit_degree())
    }
}

fn build_piece<F: Field>(ring: &Arc<SeriesRing<F>>, relations: &[GradedSeries<F>], d: u32) -> Piece<F> {
    let f = ring.field();
    let monomials = ring.monomials_of_degree(d);
    let index: HashMap<Monomial, usize> =
        monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for rel in relations {
        let Some(rd) = rel.low_degree() else { continue };
        if rd > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - rd) {
            let mut row = vec![f.zero(); monomials.len()];
            for (rm, c) in rel.terms() {
                let prod: Monomial = rm.iter().zip(&m).map(|(a, b)| a + b).collect();
                row[index[&prod]] = f.add(&row[index[&prod]], c);
            }
            rows.push(row);
        }
    }
    let echelon = Echelon::new(f.clone(), monomials.len(), rows);
    let basis = echelon.free_columns();
    Piece { monomials, index, echelon, basis }
}

/// An element of the quotient in normal form: coordinates against the
/// quotient basis, degree by degree.
#[derive(Clone, Debug)]
pub struct QuotientElement<F: Field> {
    pres: GrassmannPresentation<F>,
    coords: Vec<Vec<F::Elem>>,
}

impl<F: Field> PartialEq for QuotientElement<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pres.inner, &other.pres.inner) && self.coords == other.coords
    }
}

impl<F: Field> QuotientElement<F> {
    pub fn presentation(&self) -> &GrassmannPresentation<F> {
        &self.pres
    }

    pub fn is_zero(&self) -> bool {
        let f = self.pres.field();
        self.coords.iter().flatten().all(|c| f.is_zero(c))
    }

    /// Coordinates of the degree-`degree` part against `quotient_basis(degree)`.
    pub fn coordinates(&self, degree: u32) -> &[F::Elem] {
        &self.coords[degree as usize]
    }

    /// The canonical polynomial representative.
    pub fn to_series(&self) -> GradedSeries<F> {
        let ring = self.pres.ring();
        let mut terms = Vec::new();
        for (piece, cs) in self.pres.inner.pieces.iter().zip(&self.coords) {
            for (&col, c) in piece.basis.iter().zip(cs) {
                terms.push((piece.monomials[col].clone(), c.clone()));
            }
        }
        GradedSeries::from_terms(ring, terms)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.pres.normal_form(&self.to_series().add(&other.to_series())?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.pres.normal_form(&self.to_series().mul(&other.to_series())?)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.pres.field();
        Self {
            pres: self.pres.clone(),
            coords: self.coords.iter().map(|v| v.iter().map(|x| f.mul(x, c)).collect()).collect(),
        }
    }
}

impl<F: Field> fmt::Display for QuotientElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_series())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn real_projective_space_relation() {
        for m in 1..8 {
            let pres = GrassmannPresentation::stiefel_whitney(1, m, m + 3).unwrap();
            let rel = pres.relations();
            assert_eq!(rel.len(), 1);
            assert_eq!(*rel[0].ring().clone(), **pres.ring());
            let expected = pres.class(1).pow(m + 1);
            assert_eq!(rel[0], expected);
        }
    }

    #[test]
    fn chern_relations_for_g2_c3() {
        let pres = GrassmannPresentation::chern(2, 2, 6).unwrap();
        let rel: Vec<String> = pres.relations().iter().map(|r| r.to_string()).collect();
        assert_eq!(rel, vec!["c1^2 - c2", "-c1^3 + 2*c1*c2"]);
    }

    #[test]
    fn truncation_must_cover_relations() {
        assert_eq!(
            GrassmannPresentation::chern(2, 3, 7).unwrap_err(),
            Error::TruncationTooSmall { needed: 8, have: 7 }
        );
        assert!(GrassmannPresentation::stiefel_whitney(3, 2, 10).is_err());
    }

    #[test]
    fn g2_c3_bases() {
        let pres = GrassmannPresentation::chern(2, 2, 8).unwrap();
        assert_eq!(pres.quotient_basis(0).unwrap(), vec![vec![0, 0]]);
        assert_eq!(pres.quotient_basis(2).unwrap(), vec![vec![1, 0]]);
        assert_eq!(pres.quotient_basis(4).unwrap().len(), 1);
        assert!(pres.quotient_basis(6).unwrap().is_empty());
        assert!(pres.quotient_basis(3).unwrap().is_empty());
        assert_eq!(pres.total_rank(), 3);
    }

    #[test]
    fn c1_squared_equals_c2_in_g2_c3() {
        let pres = GrassmannPresentation::chern(2, 2, 6).unwrap();
        let c1 = pres.class(1);
        let c2 = pres.class(2);
        let lhs = pres.normal_form(&c1.pow(2)).unwrap();
        let rhs = pres.normal_form(&c2).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.is_zero());
        assert_eq!(lhs.coordinates(4), &[Rationals.one()]);
    }

    #[test]
    fn relations_normalize_to_zero() {
        let pres = GrassmannPresentation::chern(3, 5, 14).unwrap();
        for r in pres.relations() {
            assert!(pres.normal_form(r).unwrap().is_zero());
        }
        let alpha = GrassmannPresentation::stiefel_whitney(1, 4, 6).unwrap();
        assert!(alpha.normal_form(&alpha.class(1).pow(5)).unwrap().is_zero());
    }

    #[test]
    fn heights_of_first_class() {
        let pres = GrassmannPresentation::chern(2, 5, 18).unwrap();
        assert_eq!(pres.height(&pres.class(1)).unwrap(), Height::Finite(8));
        let pres = GrassmannPresentation::chern(2, 2, 6).unwrap();
        assert_eq!(pres.height(&pres.class(1)).unwrap(), Height::Finite(2));
        for m in 1..10 {
            let p = GrassmannPresentation::stiefel_whitney(1, m, m + 1).unwrap();
            assert_eq!(p.height(&p.class(1)).unwrap(), Height::Finite(m));
        }
    }

    #[test]
    fn height_is_inconclusive_when_truncation_is_short() {
        let pres = GrassmannPresentation::chern(2, 5, 12).unwrap();
        assert!(matches!(pres.height(&pres.class(1)), Err(Error::Inconclusive { .. })));
    }

    #[test]
    fn height_of_units_and_zero() {
        let pres = GrassmannPresentation::chern(2, 3, 10).unwrap();
        let one = GradedSeries::one(pres.ring());
        assert_eq!(pres.height(&one.add(&pres.class(1)).unwrap()).unwrap(), Height::Infinite);
        assert_eq!(pres.height(&pres.relations()[0]).unwrap(), Height::Finite(0));
    }

    #[test]
    fn sequential_and_parallel_construction_agree() {
        let a = GrassmannPresentation::new(Rationals, ClassKind::Chern, 3, 5, 20, Strategy::Sequential)
            .unwrap();
        let b = GrassmannPresentation::new(Rationals, ClassKind::Chern, 3, 5, 20, Strategy::Parallel)
            .unwrap();
        for d in 0..=20 {
            assert_eq!(a.quotient_basis(d).unwrap(), b.quotient_basis(d).unwrap());
        }
    }

    #[test]
    fn mod_two_chern_ring_mirrors_real_grassmannian() {
        // Doubling degrees maps H*(G_2(R^6); Z/2) onto H*(G_2(C^6); Z/2)
        let real = GrassmannPresentation::stiefel_whitney(2, 5, 10).unwrap();
        let cx = GrassmannPresentation::chern_mod_p(2, 5, 2, 20).unwrap();
        for d in 0..=10 {
            assert_eq!(
                real.quotient_basis(d).unwrap().len(),
                cx.quotient_basis(2 * d).unwrap().len()
            );
        }
        assert_eq!(real.height(&real.class(1)).unwrap(), cx.height(&cx.class(1)).unwrap());
    }
}
