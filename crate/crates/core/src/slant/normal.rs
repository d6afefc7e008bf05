use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Even polynomial generators: `u_i = <c_i|pt>` (degree 2i) and
/// `v_i = <c_i|S>` (degree 2i - 2, only for i >= 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvenGen {
    U(u32),
    V(u32),
}

impl EvenGen {
    pub fn degree(&self) -> u32 {
        match self {
            EvenGen::U(i) => 2 * i,
            EvenGen::V(i) => 2 * i - 2,
        }
    }
}

/// Odd generator `G[i,j] = <c_i|g_j>` of degree `2i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddGen {
    pub chern: u32,
    pub cycle: u32,
}

impl OddGen {
    pub fn degree(&self) -> u32 {
        2 * self.chern - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    /// Sorted by generator, exponents positive.
    even: Vec<(EvenGen, u32)>,
    /// Strictly increasing.
    odd: Vec<OddGen>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn even(gen: EvenGen, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::unit();
        }
        Monomial { even: vec![(gen, exp)], odd: Vec::new() }
    }

    pub fn odd(gen: OddGen) -> Self {
        Monomial { even: Vec::new(), odd: vec![gen] }
    }

    pub fn even_part(&self) -> &[(EvenGen, u32)] {
        &self.even
    }

    pub fn odd_part(&self) -> &[OddGen] {
        &self.odd
    }

    pub fn exponent(&self, gen: EvenGen) -> u32 {
        self.even.iter().find(|(g, _)| *g == gen).map_or(0, |(_, e)| *e)
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().map(|(g, e)| g.degree() * e).sum::<u32>()
            + self.odd.iter().map(OddGen::degree).sum::<u32>()
    }

    /// Product with the graded sign; `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let mut even: BTreeMap<EvenGen, u32> = self.even.iter().copied().collect();
        for (g, e) in &other.even {
            *even.entry(*g).or_default() += e;
        }
        // merge the odd lists, counting transpositions
        let (lhs, rhs) = (&self.odd, &other.odd);
        let mut odd = Vec::with_capacity(lhs.len() + rhs.len());
        let (mut i, mut j) = (0, 0);
        let mut swaps = 0usize;
        while i < lhs.len() || j < rhs.len() {
            if j == rhs.len() || (i < lhs.len() && lhs[i] < rhs[j]) {
                odd.push(lhs[i]);
                i += 1;
            } else if i == lhs.len() || rhs[j] < lhs[i] {
                odd.push(rhs[j]);
                swaps += lhs.len() - i;
                j += 1;
            } else {
                return None;
            }
        }
        // every G[i,j] has odd degree, so each transposition flips the sign
        Some((Monomial { even: even.into_iter().collect(), odd }, swaps % 2 == 1))
    }
}

/// Canonical element of the graded-commutative algebra
/// `Z[u_1..u_r, v_2..v_r] (x) Lambda[G[i,j]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NormalForm {
    terms: BTreeMap<Monomial, BigInt>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn constant(n: impl Into<BigInt>) -> Self {
        NormalForm::monomial(Monomial::unit(), n)
    }

    pub fn one() -> Self {
        NormalForm::constant(1)
    }

    pub fn monomial(m: Monomial, coeff: impl Into<BigInt>) -> Self {
        let mut nf = NormalForm::zero();
        nf.add_term(m, coeff.into());
        nf
    }

    pub fn u(i: u32) -> Self {
        NormalForm::monomial(Monomial::even(EvenGen::U(i), 1), 1)
    }

    pub fn v(i: u32) -> Self {
        NormalForm::monomial(Monomial::even(EvenGen::V(i), 1), 1)
    }

    pub fn g(chern: u32, cycle: u32) -> Self {
        NormalForm::monomial(Monomial::odd(OddGen { chern, cycle }), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NormalForm) -> NormalForm {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn neg(&self) -> NormalForm {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, factor: &BigInt) -> NormalForm {
        if factor.is_zero() {
            return NormalForm::zero();
        }
        NormalForm { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect() }
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> NormalForm {
        let mut out = NormalForm::one();
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Homogeneous component of degree `k`.
    pub fn degree_part(&self, k: u32) -> NormalForm {
        NormalForm {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
        if !std::mem::replace(&mut first, false) {
            write!(f, "*")?;
        }
        Ok(())
    };
    for (gen, exp) in &m.even {
        sep(f)?;
        match gen {
            EvenGen::U(i) => write!(f, "u{i}")?,
            EvenGen::V(i) => write!(f, "v{i}")?,
        }
        if *exp > 1 {
            write!(f, "^{exp}")?;
        }
    }
    for g in &m.odd {
        sep(f)?;
        write!(f, "G[{},{}]", g.chern, g.cycle)?;
    }
    Ok(())
}

/// Canonical text: terms ordered by degree then monomial, coefficients
/// `+-1` omitted except on the constant term.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        for (idx, (m, c)) in entries.into_iter().enumerate() {
            let magnitude = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::unit() {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write_monomial(f, m)?;
        }
        Ok(())
    }
}

pub fn print_normal(nf: &NormalForm) -> String {
    nf.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_examples() {
        assert_eq!(print_normal(&NormalForm::u(1).pow(2)), "u1^2");
        assert_eq!(print_normal(&NormalForm::zero()), "0");
        let gg = NormalForm::g(1, 1).mul(&NormalForm::g(1, 2)).scale(&BigInt::from(-2));
        assert_eq!(print_normal(&gg), "-2*G[1,1]*G[1,2]");
    }

    #[test]
    fn print_orders_by_degree() {
        let nf = NormalForm::u(2)
            .add(&NormalForm::constant(-3))
            .add(&NormalForm::v(2).scale(&BigInt::from(5)))
            .sub(&NormalForm::g(1, 2));
        assert_eq!(print_normal(&nf), "-3 - G[1,2] + 5*v2 + u2");
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = NormalForm::g(1, 1);
        let b = NormalForm::g(2, 3);
        assert_eq!(a.mul(&b), b.mul(&a).neg());
        assert!(a.mul(&a).is_zero());
        let c = NormalForm::g(1, 2);
        // a c b -> a b c costs one swap
        assert_eq!(a.mul(&c).mul(&b), a.mul(&b).mul(&c).neg());
    }

    #[test]
    fn degrees() {
        let m = Monomial::even(EvenGen::U(2), 2);
        assert_eq!(m.degree(), 8);
        assert_eq!(NormalForm::v(3).degrees(), vec![4]);
        assert_eq!(NormalForm::g(2, 1).degrees(), vec![3]);
    }
}
