//! Module presentations of the cohomology of `F(CP^m, 2) / Sigma_2` over the
//! cohomology of `G_2(C^{m+1})`.
//!
//! Integrally the cohomology is generated by `1` and a class `u` of degree 2
//! with `2u = 0` and `u^2 = c_1 u`. Elements are `x + y u`, where `x` lives in
//! the integral Grassmann ring (decided over `Q`) and `y` lives in the same
//! ring with `Z/2` coefficients. With `Z/2` coefficients the cohomology is
//! free on `1, v, v^2` with `|v| = 1` and `v^3 = e_1 v`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::grassmann::{ClassKind, GrassmannPresentation, QuotientElement};
use crate::series::GradedSeries;

/// `(h + 2) * 2`: enough room to certify vanishing one step past
/// `c_1^(h+1) u`, where `h = 2m - 2`.
fn module_truncation(m: u32) -> u32 {
    let top = GrassmannPresentation::<Rationals>::top_degree(2, m, ClassKind::Chern);
    top + 4
}

/// The integral module, with both coefficient rings for `G_2(C^{m+1})`.
#[derive(Clone, Debug)]
pub struct YasuiModule {
    m: u32,
    integral: GrassmannPresentation<Rationals>,
    mod2: GrassmannPresentation<PrimeField>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct YasuiModuleElement {
    free: QuotientElement<Rationals>,
    u_part: QuotientElement<PrimeField>,
}

impl YasuiModule {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("CP^{m}: need m >= 2")));
        }
        let trunc = module_truncation(m);
        Ok(Self {
            m,
            integral: GrassmannPresentation::chern(2, m, trunc)?,
            mod2: GrassmannPresentation::chern_mod_p(2, m, 2, trunc)?,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn integral_ring(&self) -> &GrassmannPresentation<Rationals> {
        &self.integral
    }

    pub fn mod2_ring(&self) -> &GrassmannPresentation<PrimeField> {
        &self.mod2
    }

    pub fn truncation(&self) -> u32 {
        self.integral.truncation()
    }

    pub fn element(
        &self,
        free: &GradedSeries<Rationals>,
        u_part: &GradedSeries<PrimeField>,
    ) -> Result<YasuiModuleElement> {
        Ok(YasuiModuleElement {
            free: self.integral.normal_form(free)?,
            u_part: self.mod2.normal_form(u_part)?,
        })
    }

    pub fn zero(&self) -> YasuiModuleElement {
        self.element(
            &GradedSeries::zero(self.integral.ring()),
            &GradedSeries::zero(self.mod2.ring()),
        )
        .expect("zero is in range")
    }

    pub fn one(&self) -> YasuiModuleElement {
        self.element(
            &GradedSeries::one(self.integral.ring()),
            &GradedSeries::zero(self.mod2.ring()),
        )
        .expect("one is in range")
    }

    pub fn u(&self) -> YasuiModuleElement {
        self.element(
            &GradedSeries::zero(self.integral.ring()),
            &GradedSeries::one(self.mod2.ring()),
        )
        .expect("u is in range")
    }

    pub fn c1(&self) -> YasuiModuleElement {
        self.element(&self.integral.class(1), &GradedSeries::zero(self.mod2.ring()))
            .expect("c1 is in range")
    }

    /// `a u + b c_1`.
    pub fn linear_class(&self, a: i64, b: i64) -> YasuiModuleElement {
        let free = self.integral.class(1).scale(&Rationals.from_i64(b));
        let u_part = GradedSeries::constant(self.mod2.ring(), PrimeField::two().from_i64(a));
        self.element(&free, &u_part).expect("degree-2 classes are in range")
    }

    /// Reduction of an integral class mod 2. Coordinates of integral classes
    /// are integers in the computed basis; anything else is reported.
    fn reduce_mod2(&self, x: &QuotientElement<Rationals>) -> Result<QuotientElement<PrimeField>> {
        let f2 = PrimeField::two();
        let lifted = x.to_series().map_coefficients(self.mod2.ring(), |q| {
            if q.denom().is_odd() {
                // an odd denominator is 1 mod 2
                Ok(f2.from_bigint(q.numer()))
            } else {
                Err(Error::InvalidArgument(format!("coefficient {q} is not 2-integral")))
            }
        })?;
        self.mod2.normal_form(&lifted)
    }

    pub fn add(&self, x: &YasuiModuleElement, y: &YasuiModuleElement) -> Result<YasuiModuleElement> {
        Ok(YasuiModuleElement { free: x.free.add(&y.free)?, u_part: x.u_part.add(&y.u_part)? })
    }

    /// `(x1 + y1 u)(x2 + y2 u) = x1 x2 + (x1 y2 + x2 y1 + y1 y2 c_1) u`.
    pub fn mul(&self, x: &YasuiModuleElement, y: &YasuiModuleElement) -> Result<YasuiModuleElement> {
        let free = x.free.mul(&y.free)?;
        let x_free2 = self.reduce_mod2(&x.free)?;
        let y_free2 = self.reduce_mod2(&y.free)?;
        let c1 = self.mod2.normal_form(&self.mod2.class(1))?;
        let u_part = x_free2
            .mul(&y.u_part)?
            .add(&y_free2.mul(&x.u_part)?)?
            .add(&x.u_part.mul(&y.u_part)?.mul(&c1)?)?;
        Ok(YasuiModuleElement { free, u_part })
    }

    pub fn pow(&self, x: &YasuiModuleElement, e: u32) -> Result<YasuiModuleElement> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }
}

impl YasuiModuleElement {
    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.u_part.is_zero()
    }

    pub fn free_part(&self) -> &QuotientElement<Rationals> {
        &self.free
    }

    pub fn u_part(&self) -> &QuotientElement<PrimeField> {
        &self.u_part
    }
}

/// Largest `t` with `cbar_t = (-1)^t (a u + b c_1)^t != 0` in the module over
/// `G_2(C^{m+1})`, for `m >= 4`.
///
/// The class `a u + b c_1` must be nonzero in the module; since `2u = 0`,
/// that excludes `b = 0` with `a` even as well as `(0, 0)`.
pub fn kappa_case(m: u32, a: i64, b: i64) -> Result<u32> {
    kappa_case_in(&YasuiModule::new(m)?, a, b)
}

/// [`kappa_case`] against a prebuilt module, for sweeps over `(a, b)`.
pub fn kappa_case_in(module: &YasuiModule, a: i64, b: i64) -> Result<u32> {
    if module.m() < 4 {
        return Err(Error::InvalidArgument(format!("kappa needs m >= 4, got {}", module.m())));
    }
    let class = module.linear_class(a, b);
    if class.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "a u + b c1 vanishes for (a, b) = ({a}, {b})"
        )));
    }
    let trunc = module.truncation();
    let mut power = class.clone();
    let mut t = 1u32;
    loop {
        if 2 * (t + 1) > trunc {
            return Err(Error::Inconclusive { truncation: trunc, checked: t });
        }
        power = module.mul(&power, &class)?;
        if power.is_zero() {
            return Ok(t);
        }
        t += 1;
    }
}

/// Mod-2 cohomology of `F(CP^m, 2) / Sigma_2` as the free module on
/// `1, v, v^2` over `H*(G_2(C^{m+1}); Z/2)`, with `v^3 = e_1 v`.
#[derive(Clone, Debug)]
pub struct YasuiMod2Module {
    ring: GrassmannPresentation<PrimeField>,
}

/// `x0 + x1 v + x2 v^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct YasuiMod2Element {
    parts: [QuotientElement<PrimeField>; 3],
}

impl YasuiMod2Module {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("CP^{m}: need m >= 2")));
        }
        Ok(Self { ring: GrassmannPresentation::chern_mod_p(2, m, 2, module_truncation(m))? })
    }

    pub fn ring(&self) -> &GrassmannPresentation<PrimeField> {
        &self.ring
    }

    fn basis_element(&self, idx: usize) -> YasuiMod2Element {
        let zero = self.ring.normal_form(&GradedSeries::zero(self.ring.ring())).unwrap();
        let one = self.ring.normal_form(&GradedSeries::one(self.ring.ring())).unwrap();
        let mut parts = [zero.clone(), zero.clone(), zero];
        parts[idx] = one;
        YasuiMod2Element { parts }
    }

    pub fn one(&self) -> YasuiMod2Element {
        self.basis_element(0)
    }

    pub fn v(&self) -> YasuiMod2Element {
        self.basis_element(1)
    }

    pub fn mul(&self, x: &YasuiMod2Element, y: &YasuiMod2Element) -> Result<YasuiMod2Element> {
        let e1 = self.ring.normal_form(&self.ring.class(1))?;
        let zero = self.ring.normal_form(&GradedSeries::zero(self.ring.ring()))?;
        let mut out = [zero.clone(), zero.clone(), zero];
        for i in 0..3 {
            for j in 0..3 {
                let prod = x.parts[i].mul(&y.parts[j])?;
                // v^3 = e1 v, v^4 = e1 v^2
                let (slot, coeff) = match i + j {
                    s @ 0..=2 => (s, None),
                    3 => (1, Some(&e1)),
                    _ => (2, Some(&e1)),
                };
                let term = match coeff {
                    Some(c) => prod.mul(c)?,
                    None => prod,
                };
                out[slot] = out[slot].add(&term)?;
            }
        }
        Ok(YasuiMod2Element { parts: out })
    }
}

impl YasuiMod2Element {
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn part(&self, idx: usize) -> &QuotientElement<PrimeField> {
        &self.parts[idx]
    }
}
