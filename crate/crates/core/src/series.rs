//! Truncated graded polynomial rings.
//!
//! A [`SeriesRing`] fixes a list of weighted generators, an optional
//! nilpotency bound per generator (`a^(e+1) = 0`), a total-degree truncation
//! and a coefficient field. [`GradedSeries`] values are sparse polynomials in
//! that ring. Every product discards terms that exceed the truncation or a
//! generator bound, so the ring is `F[x_1..x_r] / (monomial ideal)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector, one entry per generator.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Largest exponent that survives, i.e. `x^(max_exponent + 1) = 0`.
    pub max_exponent: Option<u32>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        assert!(degree > 0, "generator degrees are positive");
        Self { name: name.into(), degree, max_exponent: None }
    }

    pub fn nilpotent(name: impl Into<String>, degree: u32, max_exponent: u32) -> Self {
        Self { max_exponent: Some(max_exponent), ..Self::new(name, degree) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesRing<F: Field> {
    field: F,
    generators: Vec<Generator>,
    truncation: u32,
}

impl<F: Field> SeriesRing<F> {
    pub fn new(field: F, generators: Vec<Generator>, truncation: u32) -> Arc<Self> {
        Arc::new(Self { field, generators, truncation })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn weighted_degree(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    /// Whether the monomial survives the truncation and every generator bound.
    pub fn admits(&self, m: &[u32]) -> bool {
        self.weighted_degree(m) <= self.truncation
            && m.iter()
                .zip(&self.generators)
                .all(|(e, g)| g.max_exponent.is_none_or(|cap| *e <= cap))
    }

    /// All admissible monomials of weighted degree exactly `degree`, in
    /// descending lexicographic order of exponent vectors.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        fn rec<F: Field>(
            ring: &SeriesRing<F>,
            idx: usize,
            remaining: u32,
            cur: &mut Monomial,
            out: &mut Vec<Monomial>,
        ) {
            if idx == ring.generators.len() {
                if remaining == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let g = &ring.generators[idx];
            let mut top = remaining / g.degree;
            if let Some(cap) = g.max_exponent {
                top = top.min(cap);
            }
            for e in (0..=top).rev() {
                cur[idx] = e;
                rec(ring, idx + 1, remaining - e * g.degree, cur, out);
            }
            cur[idx] = 0;
        }
        let mut out = Vec::new();
        if degree <= self.truncation {
            let mut cur = vec![0; self.generators.len()];
            rec(self, 0, degree, &mut cur, &mut out);
        }
        out
    }
}

/// A sparse element of a [`SeriesRing`]. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct GradedSeries<F: Field> {
    ring: Arc<SeriesRing<F>>,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for GradedSeries<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl<F: Field> GradedSeries<F> {
    pub fn zero(ring: &Arc<SeriesRing<F>>) -> Self {
        Self { ring: Arc::clone(ring), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<SeriesRing<F>>) -> Self {
        let one = ring.field.one();
        Self::monomial(ring, vec![0; ring.generators.len()], one)
    }

    pub fn constant(ring: &Arc<SeriesRing<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, vec![0; ring.generators.len()], c)
    }

    /// The generator with index `idx`.
    pub fn generator(ring: &Arc<SeriesRing<F>>, idx: usize) -> Self {
        let mut m = vec![0; ring.generators.len()];
        m[idx] = 1;
        Self::monomial(ring, m, ring.field.one())
    }

    /// A single term; silently zero if the monomial is not admissible.
    pub fn monomial(ring: &Arc<SeriesRing<F>>, exponents: Monomial, coeff: F::Elem) -> Self {
        assert_eq!(exponents.len(), ring.generators.len(), "exponent vector length");
        let mut s = Self::zero(ring);
        if ring.admits(&exponents) && !ring.field.is_zero(&coeff) {
            s.terms.insert(exponents, coeff);
        }
        s
    }

    /// Builds a series from terms, summing duplicates and dropping anything
    /// that is not admissible.
    pub fn from_terms(
        ring: &Arc<SeriesRing<F>>,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut s = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.generators.len(), "exponent vector length");
            if ring.admits(&m) {
                s.accumulate(m, &c);
            }
        }
        s
    }

    fn accumulate(&mut self, m: Monomial, c: &F::Elem) {
        let f = &self.ring.field;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = f.add(v, c);
                if f.is_zero(v) {
                    self.terms.remove(&m);
                }
            }
            None => {
                if !f.is_zero(c) {
                    self.terms.insert(m, c.clone());
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<SeriesRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn truncation(&self) -> u32 {
        self.ring.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &[u32]) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn constant_term(&self) -> F::Elem {
        self.coefficient(&vec![0; self.ring.generators.len()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.ring.field.is_one(&self.constant_term())
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::StructureMismatch(format!(
                "operands live in different rings ({} gens over {}, trunc {} vs {} gens over {}, trunc {})",
                self.ring.generators.len(),
                self.ring.field.name(),
                self.ring.truncation,
                other.ring.generators.len(),
                other.ring.field.name(),
                other.ring.truncation,
            )))
        }
    }

    /// Largest weighted degree carrying a nonzero term.
    pub fn top_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.weighted_degree(m)).max()
    }

    /// Smallest weighted degree carrying a nonzero term.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| self.ring.weighted_degree(m)).min()
    }

    /// The homogeneous component of weighted degree `degree`.
    pub fn homogeneous(&self, degree: u32) -> Self {
        Self {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.weighted_degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.ring.field;
        Self {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Self {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), f.mul(v, c))).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let ring = &self.ring;
        let f = &ring.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = ring.weighted_degree(ma);
            for (mb, cb) in &other.terms {
                if da + ring.weighted_degree(mb) > ring.truncation {
                    continue;
                }
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if !ring.admits(&m) {
                    continue;
                }
                let prod = f.mul(ca, cb);
                acc.entry(m)
                    .and_modify(|v| *v = f.add(v, &prod))
                    .or_insert(prod);
            }
        }
        Ok(Self {
            ring: Arc::clone(ring),
            terms: acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Multiplicative inverse up to the truncation, solved degree by degree.
    /// The constant term must be exactly 1.
    pub fn invert(&self) -> Result<Self> {
        let ring = &self.ring;
        let f = &ring.field;
        if !f.is_one(&self.constant_term()) {
            return Err(Error::NotInvertible);
        }
        let top = ring.truncation as usize;
        let mut parts: Vec<Vec<(&Monomial, &F::Elem)>> = vec![Vec::new(); top + 1];
        for (m, c) in &self.terms {
            parts[ring.weighted_degree(m) as usize].push((m, c));
        }
        // inverse[d] holds the degree-d part of the result
        let mut inverse: Vec<BTreeMap<Monomial, F::Elem>> = Vec::with_capacity(top + 1);
        let mut unit = BTreeMap::new();
        unit.insert(vec![0; ring.generators.len()], f.one());
        inverse.push(unit);
        for d in 1..=top {
            let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
            for j in 1..=d {
                for (ms, cs) in &parts[j] {
                    for (mt, ct) in &inverse[d - j] {
                        let m: Monomial = ms.iter().zip(mt).map(|(x, y)| x + y).collect();
                        if !ring.admits(&m) {
                            continue;
                        }
                        let prod = f.mul(cs, ct);
                        acc.entry(m)
                            .and_modify(|v| *v = f.add(v, &prod))
                            .or_insert(prod);
                    }
                }
            }
            inverse.push(
                acc.into_iter()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(m, c)| (m, f.neg(&c)))
                    .collect(),
            );
        }
        Ok(Self {
            ring: Arc::clone(ring),
            terms: inverse.into_iter().flatten().collect(),
        })
    }

    /// Moves the series into another ring with the same generators, mapping
    /// each coefficient through `map`.
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Arc<SeriesRing<G>>,
        mut map: impl FnMut(&F::Elem) -> Result<G::Elem>,
    ) -> Result<GradedSeries<G>> {
        if target.generators != self.ring.generators {
            return Err(Error::StructureMismatch("generator lists differ".into()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), map(c)?));
        }
        Ok(GradedSeries::from_terms(target, terms))
    }
}

impl<F: Field> fmt::Display for GradedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let ring = &self.ring;
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            ring.weighted_degree(a).cmp(&ring.weighted_degree(b)).then_with(|| b.cmp(a))
        });
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let mut factors = Vec::new();
            for (e, g) in m.iter().zip(&ring.generators) {
                match e {
                    0 => {}
                    1 => factors.push(g.name.clone()),
                    _ => factors.push(format!("{}^{}", g.name, e)),
                }
            }
            let coeff = c.to_string();
            let (neg, coeff) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (factors.is_empty(), coeff == "1") {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, factors.join("*"))?,
            }
        }
        Ok(())
    }
}
