use num_bigint::BigInt;
use num_traits::Zero;

use super::normal::{EvenGen, NormalForm};
use crate::error::{input, Error, Result};
use crate::exterior::{theta_class, top_pairing, Multivector, SurfaceTopology};

/// Abelian invariant of a normal form: `u1^a (x) lambda` pairs to
/// `< (r0 Theta)^i / i! ^ lambda, l_O >` with `i = a + g - v`, or zero when
/// `i` falls outside `0..=g`. `G[1,j]` maps to the j-th generator of H_1.
pub fn evaluate_abelian(nf: &NormalForm, g: u32, r0: i64, v: i64) -> Result<BigInt> {
    if r0 < 1 {
        return input(format!("r0 must be positive, got {r0}"));
    }
    let topo = SurfaceTopology::new(g)?;

    // (r0 Theta)^i / i! for i in 0..=g
    let form = theta_class(&topo).scale(&BigInt::from(r0));
    let mut powers = vec![Multivector::one()];
    for i in 1..=g {
        let next = powers[i as usize - 1].wedge(&form).div_exact(&BigInt::from(i))?;
        powers.push(next);
    }

    let mut total = BigInt::zero();
    for (m, coeff) in nf.terms() {
        let mut a = 0u32;
        for (gen, exp) in m.even_part() {
            match gen {
                EvenGen::U(1) => a = *exp,
                other => {
                    return Err(Error::Unsupported(format!(
                        "generator {other:?} does not exist for r = 1"
                    )))
                }
            }
        }
        let mut lambda = Multivector::one();
        for odd in m.odd_part() {
            if odd.chern != 1 {
                return Err(Error::Unsupported(format!(
                    "G[{},{}] does not exist for r = 1",
                    odd.chern, odd.cycle
                )));
            }
            if odd.cycle < 1 || odd.cycle > topo.rank() {
                return input(format!("G[1,{}] out of range for genus {g}", odd.cycle));
            }
            lambda = lambda.wedge(&Multivector::generator(odd.cycle - 1));
        }
        let i = i64::from(a) + i64::from(g) - v;
        if (0..=i64::from(g)).contains(&i) {
            total += coeff * top_pairing(&powers[i as usize].wedge(&lambda), &topo);
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let one = NormalForm::one();
        for g in 1..4 {
            assert_eq!(evaluate_abelian(&one, g, 2, i64::from(g)).unwrap(), 0.into());
        }
        assert_eq!(evaluate_abelian(&NormalForm::u(1), 1, 2, 1).unwrap(), 2.into());
        let gg = NormalForm::g(1, 1).mul(&NormalForm::g(1, 2));
        assert_eq!(evaluate_abelian(&gg, 1, 2, 1).unwrap(), 1.into());
        // index a + g - v = 1 pairs 2 Theta ^ a1 b1 = 0
        assert_eq!(evaluate_abelian(&gg, 1, 2, 0).unwrap(), 0.into());
    }

    #[test]
    fn rejects_non_abelian_generators() {
        assert!(matches!(
            evaluate_abelian(&NormalForm::u(2), 1, 2, 0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            evaluate_abelian(&NormalForm::v(2), 1, 2, 0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            evaluate_abelian(&NormalForm::g(2, 1), 1, 2, 0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            evaluate_abelian(&NormalForm::g(1, 3), 1, 2, 0),
            Err(Error::Input(_))
        ));
    }
}
