//! Closed-form abelian invariants: the gauge-theoretic Gromov-Witten invariant
//! of a quot problem with line-bundle kernel, the quotient count in expected
//! dimension zero, and the full Seiberg-Witten invariant of a ruled surface.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::error::{input, internal, Result};
use crate::exterior::{theta_class, top_pairing, Multivector, SurfaceTopology};
use crate::index::{
    abelian_v, index_wc, intersect, spinc_det, sym_power_degree, H2Class, RuledSurface,
};

/// `< sum_{i = max(0, lower)}^{g} x^i / i! ^ l , l_O >` for a degree-2 class `x`.
pub(crate) fn truncated_exp_pairing(
    x: &Multivector,
    lower: i64,
    l: &Multivector,
    topo: &SurfaceTopology,
) -> Result<BigInt> {
    let g = i64::from(topo.genus());
    let start = lower.max(0);
    if start > g {
        return Ok(BigInt::zero());
    }
    let mut total = BigInt::zero();
    let mut power = Multivector::one();
    for i in 0..=g {
        if i > 0 {
            power = power.wedge(x).div_exact(&BigInt::from(i))?;
            if power.is_zero() {
                break;
            }
        }
        if i >= start {
            total += top_pairing(&power.wedge(l), topo);
        }
    }
    Ok(total)
}

/// Gromov-Witten invariant for `Hom(C, C^r0)` with kernel of degree `d`,
/// evaluated on `l` in the interesting chamber; `v` is the expected dimension.
pub fn ggw_abelian(g: u32, r0: i64, v: i64, l: &Multivector) -> Result<BigInt> {
    if r0 < 1 {
        return input(format!("r0 must be positive, got {r0}"));
    }
    let topo = SurfaceTopology::new(g)?;
    l.check_topology(&topo)?;
    let class = theta_class(&topo).scale(&BigInt::from(r0));
    truncated_exp_pairing(&class, i64::from(g) - v, l, &topo)
}

/// Length of a zero-dimensional quot scheme with line-bundle kernel: `r0^g`.
pub fn quot_count(g: u32, r0: i64) -> Result<BigInt> {
    if r0 < 1 {
        return input(format!("r0 must be positive, got {r0}"));
    }
    Ok(Pow::pow(BigInt::from(r0), g))
}

/// The 2-form `a, b -> <c u a u b, [X]> / 2` on pullback classes, which is
/// `<c, [F]> / 2` times the intersection form.
pub fn theta_c(pair_with_fibre: i64, topo: &SurfaceTopology) -> Result<Multivector> {
    if pair_with_fibre % 2 != 0 {
        return input(format!("<c,[F]> = {pair_with_fibre} must be even"));
    }
    Ok(theta_class(topo).scale(&BigInt::from(pair_with_fibre / 2)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwResult {
    /// `sign <c, [F]>`.
    pub sign: i8,
    /// Value in the chamber labelled by `sign`.
    pub value_signed_chamber: BigInt,
    /// Value in the chamber labelled by `-sign`; always zero.
    pub value_opposite_chamber: BigInt,
    pub w_c: i64,
    pub c: H2Class,
    pub pair_with_fibre: i64,
}

impl SwResult {
    /// Value in the `+` chamber.
    pub fn plus(&self) -> BigInt {
        if self.sign < 0 {
            self.value_opposite_chamber.clone()
        } else {
            self.value_signed_chamber.clone()
        }
    }

    /// Value in the `-` chamber.
    pub fn minus(&self) -> BigInt {
        if self.sign < 0 {
            self.value_signed_chamber.clone()
        } else {
            self.value_opposite_chamber.clone()
        }
    }
}

/// `c - K_X` divisible by two.
pub fn is_characteristic(c: &H2Class, geom: &RuledSurface) -> bool {
    c.coef_s % 2 == 0 && (c.coef_f - geom.v0_degree) % 2 == 0
}

/// Full Seiberg-Witten invariant for a Spin^c structure with determinant
/// class `c`, evaluated on `l`.
pub fn sw_for_class(c: H2Class, geom: &RuledSurface, l: &Multivector) -> Result<SwResult> {
    if !is_characteristic(&c, geom) {
        return input(format!("{c} is not a characteristic class on this surface"));
    }
    let genus = u32::try_from(geom.genus)?;
    let topo = SurfaceTopology::new(genus)?;
    l.check_topology(&topo)?;
    let pair = intersect(&c, &H2Class::F, geom);
    let w_c = index_wc(&c, geom)?;
    if w_c % 2 != 0 {
        return internal(format!("index w_c = {w_c} is odd for {c}"));
    }
    let sign: i8 = match pair.signum() {
        1 => 1,
        -1 => -1,
        _ => 0,
    };
    let value = if sign == 0 {
        BigInt::zero()
    } else {
        let form = theta_c(pair, &topo)?;
        let raw = truncated_exp_pairing(&form, geom.genus - w_c / 2, l, &topo)?;
        raw * BigInt::from(sign)
    };
    Ok(SwResult {
        sign,
        value_signed_chamber: value,
        value_opposite_chamber: BigInt::zero(),
        w_c,
        c,
        pair_with_fibre: pair,
    })
}

/// Invariant of the Spin^c structure whose determinant is `2(d f + n s) - K_X`.
pub fn sw_ruled(d: i64, n: i64, geom: &RuledSurface, l: &Multivector) -> Result<SwResult> {
    sw_for_class(spinc_det(d, n, geom), geom, l)
}

/// Compares the Seiberg-Witten value with the Gromov-Witten invariant of the
/// quot problem `L^* -> S^n V0` it is identified with.
pub fn sw_equals_ggw_check(d: i64, n: i64, geom: &RuledSurface, l: &Multivector) -> Result<bool> {
    if n < 0 {
        return input(format!("n must be non-negative, got {n}"));
    }
    let sw = sw_ruled(d, n, geom, l)?;
    let r0 = n + 1;
    let v = abelian_v(r0, -d, sym_power_degree(n, geom.v0_degree), geom.genus);
    let genus = u32::try_from(geom.genus)?;
    let ggw = ggw_abelian(genus, r0, v, l)?;
    Ok(sw.value_signed_chamber == ggw * BigInt::from(sw.sign) && sw.value_opposite_chamber.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(k: u32) -> Multivector {
        Multivector::a(k).wedge(&Multivector::b(k))
    }

    #[test]
    fn ggw_examples() {
        let one = Multivector::one();
        assert_eq!(ggw_abelian(0, 4, 0, &one).unwrap(), 1.into());
        assert_eq!(ggw_abelian(0, 4, 3, &one).unwrap(), 1.into());
        assert_eq!(ggw_abelian(0, 4, -1, &one).unwrap(), 0.into());
        assert_eq!(ggw_abelian(2, 3, 2, &one).unwrap(), 9.into());
        assert_eq!(ggw_abelian(1, 3, 2, &ab(1)).unwrap(), 1.into());
        assert_eq!(ggw_abelian(1, 2, 0, &one).unwrap(), 2.into());
    }

    #[test]
    fn ggw_rejects_bad_input() {
        assert!(ggw_abelian(1, 0, 0, &Multivector::one()).is_err());
        assert!(ggw_abelian(1, 2, 0, &Multivector::a(2)).is_err());
    }

    #[test]
    fn quot_count_examples() {
        assert_eq!(quot_count(0, 7).unwrap(), 1.into());
        assert_eq!(quot_count(2, 3).unwrap(), 9.into());
        assert_eq!(quot_count(3, 2).unwrap(), 8.into());
    }

    #[test]
    fn theta_c_examples() {
        let t1 = SurfaceTopology::new(1).unwrap();
        let t2 = SurfaceTopology::new(2).unwrap();
        assert!(theta_c(0, &t2).unwrap().is_zero());
        assert_eq!(theta_c(4, &t1).unwrap(), ab(1).scale(&2.into()));
        assert_eq!(theta_c(2, &t2).unwrap(), theta_class(&t2));
        assert!(theta_c(3, &t1).is_err());
    }

    #[test]
    fn sw_examples() {
        let x = RuledSurface::new(1, 0).unwrap();
        let r = sw_ruled(1, 1, &x, &Multivector::one()).unwrap();
        assert_eq!(r.sign, 1);
        assert_eq!(r.value_signed_chamber, 2.into());
        assert_eq!(r.value_opposite_chamber, 0.into());
        assert_eq!(r.w_c, 4);
        assert_eq!(r.c, H2Class::new(4, 2));

        let r = sw_ruled(0, 0, &x, &Multivector::one()).unwrap();
        assert_eq!((r.sign, r.w_c), (1, 0));
        assert_eq!(r.value_signed_chamber, 1.into());

        let r = sw_ruled(1, 1, &x, &ab(1)).unwrap();
        assert_eq!(r.value_signed_chamber, 1.into());
    }

    #[test]
    fn sw_zero_fibre_pairing() {
        let x = RuledSurface::new(2, 1).unwrap();
        let c = H2Class::new(0, 3);
        let r = sw_for_class(c, &x, &Multivector::one()).unwrap();
        assert_eq!(r.sign, 0);
        assert_eq!(r.pair_with_fibre, 0);
        assert_eq!((r.plus(), r.minus()), (0.into(), 0.into()));
    }

    #[test]
    fn sw_negative_fibre_pairing_lands_in_minus_chamber() {
        let x = RuledSurface::new(1, 0).unwrap();
        let r = sw_ruled(0, -2, &x, &Multivector::one()).unwrap();
        assert_eq!(r.sign, -1);
        assert_eq!(r.pair_with_fibre, -2);
        assert_eq!(r.plus(), 0.into());
        // Theta_c = -Theta, w_c = 0: value = -<-Theta> = 1
        assert_eq!(r.minus(), 1.into());
    }

    #[test]
    fn sw_rejects_non_characteristic() {
        let x = RuledSurface::new(1, 0).unwrap();
        assert!(sw_for_class(H2Class::new(1, 0), &x, &Multivector::one()).is_err());
    }

    #[test]
    fn sw_matches_ggw_examples() {
        let x = RuledSurface::new(1, 0).unwrap();
        assert!(sw_equals_ggw_check(1, 1, &x, &Multivector::one()).unwrap());
        assert!(sw_equals_ggw_check(0, 0, &x, &Multivector::one()).unwrap());
    }
}
