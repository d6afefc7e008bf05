//! Second route to the abelian Gromov-Witten invariant, following the
//! geometry of the quot scheme instead of the closed formula.
//!
//! After twisting by a large multiple of a degree-one line bundle the quot
//! scheme sits inside the projective bundle `P(W)` of lines in
//! `W = pi_*(Poincare^*)^{r0}` over the Picard torus, cut out by `k` sections
//! of `O(1)`. Integrating `h^(a+k)` over `P(W)` pushes down to Segre classes
//! of `W`, whose Chern character comes from Grothendieck-Riemann-Roch along
//! `Pic x Sigma -> Pic`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{input, internal, Result};
#[cfg(test)]
use crate::error::Error;
use crate::exterior::{theta_class, top_pairing, Multivector, SurfaceTopology};
use crate::index::abelian_v;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Rational polynomial in the theta class of the Picard torus, truncated
/// above `theta^g`. Index `i` holds the coefficient of `theta^i`, which lives
/// in cohomological degree `2i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSeries {
    coeffs: Vec<BigRational>,
}

impl ThetaSeries {
    pub fn zero(g: u32) -> Self {
        ThetaSeries { coeffs: vec![BigRational::zero(); g as usize + 1] }
    }

    pub fn constant(g: u32, value: BigRational) -> Self {
        let mut s = ThetaSeries::zero(g);
        s.coeffs[0] = value;
        s
    }

    pub fn from_coeffs(g: u32, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = ThetaSeries::zero(g);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn genus(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &ThetaSeries) -> ThetaSeries {
        ThetaSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> ThetaSeries {
        ThetaSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn mul(&self, other: &ThetaSeries) -> ThetaSeries {
        let n = self.coeffs.len();
        let mut out = ThetaSeries::zero(self.genus());
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }

    /// `exp` of a series without constant term.
    pub fn exp(&self) -> Result<ThetaSeries> {
        if !self.coeffs[0].is_zero() {
            return input("exp needs a series with zero constant term");
        }
        let mut sum = ThetaSeries::constant(self.genus(), BigRational::one());
        let mut term = sum.clone();
        for k in 1..self.coeffs.len() {
            term = term.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<ThetaSeries> {
        let lead = &self.coeffs[0];
        if lead.is_zero() {
            return input("series with zero constant term is not invertible");
        }
        let inv_lead = lead.recip();
        let mut out = ThetaSeries::zero(self.genus());
        out.coeffs[0] = inv_lead.clone();
        for k in 1..self.coeffs.len() {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -acc * &inv_lead;
        }
        Ok(out)
    }
}

impl fmt::Display for ThetaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*theta")?,
                _ => write!(f, "({c})*theta^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Monomial `theta^t gamma^c eta^e` on `Pic x Sigma`; `gamma` is the
/// mixed (1,1) Kunneth component and `eta` the point class of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KunnethMonomial {
    pub theta: u32,
    pub gamma: u8,
    pub eta: u8,
}

/// Element of the subring of `H^*(Pic x Sigma, Q)` generated by `theta`,
/// `gamma` and `eta`, with `eta^2 = 0`, `gamma eta = 0`,
/// `gamma^2 = -2 theta eta` and `theta^(g+1) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethClass {
    genus: u32,
    terms: BTreeMap<KunnethMonomial, BigRational>,
}

impl KunnethClass {
    pub fn zero(genus: u32) -> Self {
        KunnethClass { genus, terms: BTreeMap::new() }
    }

    pub fn monomial(genus: u32, m: KunnethMonomial, coeff: BigRational) -> Self {
        let mut out = KunnethClass::zero(genus);
        out.add_term(m, coeff);
        out
    }

    pub fn one(genus: u32) -> Self {
        KunnethClass::monomial(genus, KunnethMonomial { theta: 0, gamma: 0, eta: 0 }, BigRational::one())
    }

    pub fn eta(genus: u32) -> Self {
        KunnethClass::monomial(genus, KunnethMonomial { theta: 0, gamma: 0, eta: 1 }, BigRational::one())
    }

    pub fn gamma(genus: u32) -> Self {
        KunnethClass::monomial(genus, KunnethMonomial { theta: 0, gamma: 1, eta: 0 }, BigRational::one())
    }

    pub fn theta(genus: u32) -> Self {
        KunnethClass::monomial(genus, KunnethMonomial { theta: 1, gamma: 0, eta: 0 }, BigRational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KunnethMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, theta: u32, gamma: u8, eta: u8) -> BigRational {
        self.terms
            .get(&KunnethMonomial { theta, gamma, eta })
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: KunnethMonomial, coeff: BigRational) {
        if coeff.is_zero() || m.theta > self.genus {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &KunnethClass) -> KunnethClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> KunnethClass {
        let mut out = KunnethClass::zero(self.genus);
        for (m, c) in &self.terms {
            out.add_term(*m, c * factor);
        }
        out
    }

    /// Product of two monomials after applying the relations, as
    /// `(monomial, sign factor)`.
    fn mul_monomial(a: KunnethMonomial, b: KunnethMonomial) -> Option<(KunnethMonomial, i64)> {
        let mut theta = a.theta + b.theta;
        let mut gamma = a.gamma + b.gamma;
        let mut eta = a.eta + b.eta;
        let mut factor = 1;
        if gamma == 2 {
            gamma = 0;
            theta += 1;
            eta += 1;
            factor = -2;
        }
        if gamma > 1 || eta > 1 || (gamma == 1 && eta == 1) {
            return None;
        }
        Some((KunnethMonomial { theta, gamma, eta }, factor))
    }

    pub fn mul(&self, other: &KunnethClass) -> KunnethClass {
        let mut out = KunnethClass::zero(self.genus);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, factor)) = KunnethClass::mul_monomial(*ma, *mb) {
                    out.add_term(m, ca * cb * rat(factor));
                }
            }
        }
        out
    }

    /// Chern character of a line bundle with first Chern class `self`.
    pub fn exp(&self) -> KunnethClass {
        // Nilpotent in degree > 2g + 2, so 2g + 3 terms always suffice.
        let mut sum = KunnethClass::one(self.genus);
        let mut term = sum.clone();
        for k in 1..=(2 * self.genus as usize + 3) {
            term = term.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if term.terms.is_empty() {
                break;
            }
            sum = sum.add(&term);
        }
        sum
    }

    /// Integration along the curve: the `eta` coefficient as a theta series.
    /// Terms linear in `gamma` have odd degree along the curve and integrate
    /// to zero.
    pub fn integrate_over_curve(&self) -> ThetaSeries {
        let mut out = ThetaSeries::zero(self.genus);
        for (m, c) in &self.terms {
            if m.eta == 1 && m.gamma == 0 {
                out.coeffs[m.theta as usize] += c;
            }
        }
        out
    }
}

/// Chern character of the normalized Poincare bundle on `Pic^{d'} x Sigma`,
/// whose first Chern class is `d' eta + gamma`.
pub fn poincare_chern(dprime: i64, g: u32) -> KunnethClass {
    let c1 = KunnethClass::eta(g).scale(&rat(dprime)).add(&KunnethClass::gamma(g));
    c1.exp()
}

/// Todd class `1 + (1 - g) eta` of the curve.
pub fn curve_todd(g: u32) -> KunnethClass {
    KunnethClass::one(g).add(&KunnethClass::eta(g).scale(&rat(1 - i64::from(g))))
}

/// Chern character of the direct image of `r0` copies of a degree-`dprime`
/// Poincare bundle, by Grothendieck-Riemann-Roch.
pub fn grr_pushforward(dprime: i64, r0: i64, g: u32) -> Result<ThetaSeries> {
    if r0 < 1 {
        return input(format!("r0 must be positive, got {r0}"));
    }
    let integrand = poincare_chern(dprime, g).mul(&curve_todd(g));
    Ok(integrand.integrate_over_curve().scale(&rat(r0)))
}

/// Total Chern series from a Chern character, through Newton's identities on
/// the power sums `p_i = i! ch_i`.
pub fn chern_series(ch: &ThetaSeries) -> Result<ThetaSeries> {
    if !ch.coeff(0).is_integer() {
        return input(format!("rank term {} of Chern character is not an integer", ch.coeff(0)));
    }
    let g = ch.genus() as usize;
    let power_sums: Vec<BigRational> = (0..=g)
        .map(|i| ch.coeff(i) * BigRational::from_integer(factorial(i)))
        .collect();
    let mut e = vec![BigRational::zero(); g + 1];
    e[0] = BigRational::one();
    for k in 1..=g {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / rat(k as i64);
    }
    Ok(ThetaSeries::from_coeffs(ch.genus(), e))
}

/// Segre series: inverse of the total Chern series.
pub fn segre_series(ch: &ThetaSeries) -> Result<ThetaSeries> {
    chern_series(ch)?.inverse()
}

/// Bookkeeping of one run of the projective-bundle computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreSetup {
    /// Degree of the twisted kernel `L (x) H^{-twist}`.
    pub dprime: i64,
    /// Number of points cut out by the sections, i.e. the codimension.
    pub k: i64,
    /// Fibre dimension of the projective bundle.
    pub fibre_dim: i64,
    pub v: i64,
}

/// Smallest twist for which the projective-bundle model is valid.
pub fn min_aux_twist(g: u32, r0: i64, d: i64, d0: i64) -> i64 {
    let g = i64::from(g);
    // need d - t <= -1 - 2g and r0 t - d0 >= 0
    let from_degree = d + 1 + 2 * g;
    let from_points = if d0 <= 0 { 0 } else { (d0 + r0 - 1) / r0 };
    from_degree.max(from_points).max(0)
}

pub fn segre_setup(g: u32, r0: i64, d: i64, d0: i64, aux_twist: i64) -> Result<SegreSetup> {
    if r0 < 1 {
        return input(format!("r0 must be positive, got {r0}"));
    }
    let gi = i64::from(g);
    let dprime = d - aux_twist;
    let k = r0 * aux_twist - d0;
    if dprime > -1 - 2 * gi {
        return input(format!(
            "twist {aux_twist} too small: twisted degree {dprime} must be <= {}",
            -1 - 2 * gi
        ));
    }
    if k < 0 {
        return input(format!("twist {aux_twist} too small: point count {k} is negative"));
    }
    let fibre_dim = r0 * (1 - gi - dprime) - 1;
    let v = abelian_v(r0, d, d0, gi);
    if gi + fibre_dim - k != v {
        return internal(format!(
            "dimension mismatch: dim P - k = {} but v = {v}",
            gi + fibre_dim - k
        ));
    }
    Ok(SegreSetup { dprime, k, fibre_dim, v })
}

/// Gromov-Witten invariant evaluated through the Segre classes of the direct
/// image bundle on the Picard torus. Agrees with
/// [`crate::invariants::ggw_abelian`] for every valid twist.
pub fn ggw_via_segre(
    g: u32,
    r0: i64,
    d: i64,
    d0: i64,
    aux_twist: i64,
    l: &Multivector,
) -> Result<BigInt> {
    let topo = SurfaceTopology::new(g)?;
    l.check_topology(&topo)?;
    let setup = segre_setup(g, r0, d, d0, aux_twist)?;

    // W = pi_*(P^*)^{r0}, with P^* of degree -d'
    let ch = grr_pushforward(-setup.dprime, r0, g)?;
    let rank = ch.coeff(0);
    if rank != rat(setup.fibre_dim + 1) {
        return internal(format!("rank of W is {rank}, expected {}", setup.fibre_dim + 1));
    }
    let segre = segre_series(&ch)?;

    // Integrals of theta^j against each blade of l over the Picard torus.
    let theta = theta_class(&topo);
    let mut theta_pow = Multivector::one();
    let mut integrals = Vec::with_capacity(g as usize + 1);
    for j in 0..=g {
        if j > 0 {
            theta_pow = theta_pow.wedge(&theta);
        }
        integrals.push(top_pairing(&theta_pow.wedge(l), &topo));
    }

    // u^a restricts to h; h^(a+k) over P pushes to s_{a+k-N}.
    let shift = setup.k - setup.fibre_dim;
    let mut total = BigRational::zero();
    let mut a = 0i64;
    loop {
        let j = a + shift;
        if j > i64::from(g) {
            break;
        }
        if j >= 0 {
            let j = j as usize;
            total += segre.coeff(j) * BigRational::from_integer(integrals[j].clone());
        }
        a += 1;
    }
    if !total.is_integer() {
        return internal(format!("pairing {total} is not integral"));
    }
    Ok(total.to_integer())
}
