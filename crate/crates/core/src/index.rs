//! Euler characteristics, expected dimensions, chamber classification and the
//! intersection ring of a ruled surface `X = P(V0)` over a genus-g curve.
//!
//! The projectivization follows the Grothendieck convention, so with
//! `s = c1(O(1))` and `f` the fibre class: `s^2 = deg V0`, `s.f = 1`, `f^2 = 0`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{input, internal, Error, Result};

/// Smooth type of a bundle on the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BundleType {
    rank: i64,
    degree: i64,
}

impl BundleType {
    pub fn new(rank: i64, degree: i64) -> Result<Self> {
        if rank < 1 {
            return input(format!("bundle rank must be positive, got {rank}"));
        }
        Ok(BundleType { rank, degree })
    }

    pub fn line(degree: i64) -> Self {
        BundleType { rank: 1, degree }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }
}

/// Quotients `E -> E0` on a genus-g curve, with `E` the kernel type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotProblem {
    pub genus: i64,
    pub kernel: BundleType,
    pub target: BundleType,
}

/// Riemann-Roch on a curve: `d + r(1 - g)`.
pub fn euler_char(b: &BundleType, g: i64) -> i64 {
    b.degree + b.rank * (1 - g)
}

/// `chi(E^* (x) E0) - chi(E^* (x) E)`.
pub fn expected_dim(p: &QuotProblem) -> i64 {
    let (r, d) = (p.kernel.rank, p.kernel.degree);
    let (r0, d0) = (p.target.rank, p.target.degree);
    r * d0 - r0 * d + r * (r0 - r) * (1 - p.genus)
}

/// Expected dimension for a line-bundle kernel of degree `d` inside a rank
/// `r0`, degree `d0` target.
pub fn abelian_v(r0: i64, d: i64, d0: i64, g: i64) -> i64 {
    d0 - r0 * d + (r0 - 1) * (1 - g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    Empty,
    Interesting,
    Wall,
}

impl Chamber {
    pub fn as_str(&self) -> &'static str {
        match self {
            Chamber::Empty => "empty",
            Chamber::Interesting => "interesting",
            Chamber::Wall => "wall",
        }
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Continuous parameter on a curve. `t` is carried in units of `2*pi`, so the
/// threshold quantity `t * Vol / (2*pi)` is the exact rational
/// `t_over_two_pi * volume`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberParams {
    t_over_two_pi: BigRational,
    volume: BigRational,
    kernel: BundleType,
}

impl ChamberParams {
    pub fn new(t_over_two_pi: BigRational, volume: BigRational, kernel: BundleType) -> Result<Self> {
        if !volume.is_positive() {
            return input(format!("volume must be positive, got {volume}"));
        }
        Ok(ChamberParams { t_over_two_pi, volume, kernel })
    }

    /// Parameters given directly by `tau = t * Vol / (2*pi)`.
    pub fn from_tau(tau: BigRational, kernel: BundleType) -> Self {
        ChamberParams {
            t_over_two_pi: tau,
            volume: BigRational::from_integer(1.into()),
            kernel,
        }
    }

    pub fn tau(&self) -> BigRational {
        &self.t_over_two_pi * &self.volume
    }
}

/// Places an abelian continuous parameter relative to the single wall
/// `t * Vol / (2*pi) = -d`.
pub fn chamber_classify(p: &ChamberParams) -> Result<Chamber> {
    if p.kernel.rank != 1 {
        return Err(Error::Unsupported(format!(
            "chamber structure for kernel rank {} is not computed",
            p.kernel.rank
        )));
    }
    let threshold = BigRational::from_integer(BigInt::from(-p.kernel.degree));
    Ok(match p.tau().cmp(&threshold) {
        Ordering::Greater => Chamber::Interesting,
        Ordering::Less => Chamber::Empty,
        Ordering::Equal => Chamber::Wall,
    })
}

/// Ruled surface `P(V0)` over a genus-g curve, `V0` of rank 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuledSurface {
    pub genus: i64,
    pub v0_degree: i64,
}

impl RuledSurface {
    pub fn new(genus: i64, v0_degree: i64) -> Result<Self> {
        if genus < 0 {
            return input(format!("genus must be non-negative, got {genus}"));
        }
        Ok(RuledSurface { genus, v0_degree })
    }

    /// Signature of a ruled surface.
    pub fn signature(&self) -> i64 {
        0
    }

    /// Topological Euler characteristic `4(1 - g)`.
    pub fn euler_number(&self) -> i64 {
        4 * (1 - self.genus)
    }
}

/// The class `s * coef_s + f * coef_f` in H^2 of a ruled surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct H2Class {
    pub coef_s: i64,
    pub coef_f: i64,
}

impl H2Class {
    pub const S: H2Class = H2Class { coef_s: 1, coef_f: 0 };
    pub const F: H2Class = H2Class { coef_s: 0, coef_f: 1 };

    pub fn new(coef_s: i64, coef_f: i64) -> Self {
        H2Class { coef_s, coef_f }
    }

    /// Class `d f + n s` of the line bundle `pi^*(L) (x) O(n)`.
    pub fn line_bundle(d: i64, n: i64) -> Self {
        H2Class { coef_s: n, coef_f: d }
    }

    pub fn scale(self, k: i64) -> Self {
        H2Class { coef_s: k * self.coef_s, coef_f: k * self.coef_f }
    }
}

impl std::ops::Add for H2Class {
    type Output = H2Class;

    fn add(self, rhs: H2Class) -> H2Class {
        H2Class { coef_s: self.coef_s + rhs.coef_s, coef_f: self.coef_f + rhs.coef_f }
    }
}

impl std::ops::Sub for H2Class {
    type Output = H2Class;

    fn sub(self, rhs: H2Class) -> H2Class {
        H2Class { coef_s: self.coef_s - rhs.coef_s, coef_f: self.coef_f - rhs.coef_f }
    }
}

impl std::ops::Neg for H2Class {
    type Output = H2Class;

    fn neg(self) -> H2Class {
        self.scale(-1)
    }
}

impl fmt::Display for H2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*s + {}*f", self.coef_s, self.coef_f)
    }
}

pub fn intersect(x: &H2Class, y: &H2Class, geom: &RuledSurface) -> i64 {
    x.coef_s * y.coef_s * geom.v0_degree + x.coef_s * y.coef_f + x.coef_f * y.coef_s
}

/// `K_X = -2s + (2g - 2 + deg V0) f`.
pub fn canonical_class(geom: &RuledSurface) -> H2Class {
    H2Class::new(-2, 2 * geom.genus - 2 + geom.v0_degree)
}

/// Determinant class `2(d f + n s) - K_X` of the Spin^c structure attached to
/// the line bundle of class `d f + n s`.
pub fn spinc_det(d: i64, n: i64, geom: &RuledSurface) -> H2Class {
    H2Class::line_bundle(d, n).scale(2) - canonical_class(geom)
}

/// Seiberg-Witten index `(c^2 - 3 sigma - 2 e) / 4`.
pub fn index_wc(c: &H2Class, geom: &RuledSurface) -> Result<i64> {
    let numerator = intersect(c, c, geom) - 3 * geom.signature() - 2 * geom.euler_number();
    if numerator % 4 != 0 {
        return input(format!("{c} is not characteristic: c^2 - 3sigma - 2e = {numerator}"));
    }
    Ok(numerator / 4)
}

/// Index `chi(M) - chi(O_X) = m.(m - K) / 2` of the Douady space of class `m`.
pub fn douady_index(m: &H2Class, geom: &RuledSurface) -> Result<i64> {
    let k = canonical_class(geom);
    let twice = intersect(m, &(*m - k), geom);
    if twice % 2 != 0 {
        return internal(format!("m.(m-K) = {twice} is odd for m = {m}"));
    }
    Ok(twice / 2)
}

/// Degree of `S^n V0` for `deg V0 = v0_degree`.
pub fn sym_power_degree(n: i64, v0_degree: i64) -> i64 {
    n * (n + 1) / 2 * v0_degree
}
