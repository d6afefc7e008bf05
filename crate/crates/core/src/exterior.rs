//! Integer exterior algebra over H_1 of a closed genus-g surface.
//!
//! Generators are ordered `a1 < b1 < a2 < b2 < ... < ag < bg` and a blade is
//! stored as a bitmask over that order (bit `2(k-1)` is `ak`, bit `2k-1` is
//! `bk`). Coefficients are arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{input, internal, Error, Result};

/// Largest genus whose generators fit the 64-bit blade encoding.
pub const MAX_GENUS: u32 = 32;

pub type Blade = u64;

/// A closed oriented surface of genus `g` with its fixed symplectic basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceTopology {
    genus: u32,
}

impl SurfaceTopology {
    pub fn new(genus: u32) -> Result<Self> {
        if genus > MAX_GENUS {
            return input(format!("genus {genus} exceeds supported maximum {MAX_GENUS}"));
        }
        Ok(SurfaceTopology { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of generators of H_1, i.e. `2g`.
    pub fn rank(&self) -> u32 {
        2 * self.genus
    }

    /// Mask with every generator set; the orientation blade `a1 b1 ... ag bg`.
    pub fn top_blade(&self) -> Blade {
        if self.genus == 0 {
            0
        } else {
            u64::MAX >> (64 - self.rank())
        }
    }

    pub fn contains(&self, blade: Blade) -> bool {
        blade & !self.top_blade() == 0
    }

    /// Intersection number of basis generators `i` and `j` (0-based).
    pub fn intersection(&self, i: u32, j: u32) -> i64 {
        if i / 2 != j / 2 || i >= self.rank() || j >= self.rank() {
            return 0;
        }
        match (i % 2, j % 2) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    }

    /// Human label of a 0-based generator index (`a1`, `b1`, ...).
    pub fn label(index: u32) -> String {
        let kind = if index % 2 == 0 { 'a' } else { 'b' };
        format!("{kind}{}", index / 2 + 1)
    }
}

/// Sign of moving `rhs` past `lhs` to reach canonical order: the parity of the
/// number of pairs `(i in lhs, j in rhs)` with `i > j`.
fn shuffle_sign(lhs: Blade, rhs: Blade) -> bool {
    let mut swaps = 0u32;
    let mut rest = rhs;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j == 63 { 0 } else { lhs >> (j + 1) };
        swaps += above.count_ones();
    }
    swaps % 2 == 1
}

/// Wedge of two basis blades: `None` when a generator repeats, otherwise the
/// product blade and whether the sign is negative.
pub fn blade_wedge(lhs: Blade, rhs: Blade) -> Option<(Blade, bool)> {
    if lhs & rhs != 0 {
        return None;
    }
    Some((lhs | rhs, shuffle_sign(lhs, rhs)))
}

pub fn grade(blade: Blade) -> u32 {
    blade.count_ones()
}

/// Sparse element of the integer exterior algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Multivector {
    terms: BTreeMap<Blade, BigInt>,
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector::default()
    }

    pub fn one() -> Self {
        Multivector::scalar(BigInt::one())
    }

    pub fn scalar(value: impl Into<BigInt>) -> Self {
        Multivector::from_blade(0, value)
    }

    pub fn from_blade(blade: Blade, coeff: impl Into<BigInt>) -> Self {
        let mut mv = Multivector::zero();
        mv.add_term(blade, coeff.into());
        mv
    }

    /// The single generator with 0-based index `index`.
    pub fn generator(index: u32) -> Self {
        Multivector::from_blade(1u64 << index, 1)
    }

    pub fn a(k: u32) -> Self {
        Multivector::generator(2 * (k - 1))
    }

    pub fn b(k: u32) -> Self {
        Multivector::generator(2 * (k - 1) + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &BigInt)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coefficient(&self, blade: Blade) -> BigInt {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, blade: Blade, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(blade).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&blade);
        }
    }

    /// Union of all generators used by any term.
    pub fn support(&self) -> Blade {
        self.terms.keys().fold(0, |acc, b| acc | b)
    }

    pub fn check_topology(&self, topo: &SurfaceTopology) -> Result<()> {
        if topo.contains(self.support()) {
            Ok(())
        } else {
            input(format!(
                "multivector uses generators outside genus {} (support mask {:#x})",
                topo.genus(),
                self.support()
            ))
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Multivector {
        if factor.is_zero() {
            return Multivector::zero();
        }
        Multivector {
            terms: self.terms.iter().map(|(b, c)| (*b, c * factor)).collect(),
        }
    }

    /// `c1 * x + c2 * y`.
    pub fn combine(c1: &BigInt, x: &Multivector, c2: &BigInt, y: &Multivector) -> Multivector {
        let mut out = x.scale(c1);
        for (blade, coeff) in y.terms() {
            out.add_term(blade, coeff * c2);
        }
        out
    }

    /// Exterior product, without a topology check.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        let mut out = Multivector::zero();
        for (lb, lc) in &self.terms {
            for (rb, rc) in &other.terms {
                if let Some((blade, negative)) = blade_wedge(*lb, *rb) {
                    let prod = lc * rc;
                    out.add_term(blade, if negative { -prod } else { prod });
                }
            }
        }
        out
    }

    pub fn grade_part(&self, k: u32) -> Multivector {
        Multivector {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| grade(**b) == k)
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }

    /// Common degree of every term; `None` for zero or mixed-degree elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut grades = self.terms.keys().map(|b| grade(*b));
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    pub fn max_grade(&self) -> Option<u32> {
        self.terms.keys().map(|b| grade(*b)).max()
    }

    /// Exact division of every coefficient; fails if any is not divisible.
    pub fn div_exact(&self, divisor: &BigInt) -> Result<Multivector> {
        let mut out = Multivector::zero();
        for (blade, coeff) in &self.terms {
            let (q, r) = coeff.div_rem(divisor);
            if !r.is_zero() {
                return internal(format!("coefficient {coeff} not divisible by {divisor}"));
            }
            out.add_term(*blade, q);
        }
        Ok(out)
    }

    /// Parses the `2*a1^b1 - a2^b2 + 3` text syntax.
    pub fn parse(text: &str, topo: &SurfaceTopology) -> Result<Multivector> {
        FormParser::new(text, topo).parse()
    }
}

pub fn wedge(x: &Multivector, y: &Multivector, topo: &SurfaceTopology) -> Result<Multivector> {
    x.check_topology(topo)?;
    y.check_topology(topo)?;
    Ok(x.wedge(y))
}

pub fn combine(c1: &BigInt, x: &Multivector, c2: &BigInt, y: &Multivector) -> Multivector {
    Multivector::combine(c1, x, c2, y)
}

/// The intersection-form class `a1^b1 + ... + ag^bg`.
pub fn theta_class(topo: &SurfaceTopology) -> Multivector {
    let mut theta = Multivector::zero();
    for k in 0..topo.genus() {
        theta.add_term(0b11u64 << (2 * k), BigInt::one());
    }
    theta
}

/// Sum of `x^k / k!` over all k, for `x` homogeneous of even degree >= 2.
/// The series terminates because the algebra is nilpotent above degree 2g.
pub fn exp_even(x: &Multivector, topo: &SurfaceTopology) -> Result<Multivector> {
    x.check_topology(topo)?;
    if x.is_zero() {
        return Ok(Multivector::one());
    }
    match x.homogeneous_degree() {
        Some(deg) if deg >= 2 && deg % 2 == 0 => {}
        _ => return input("exp_even needs a homogeneous element of even degree >= 2"),
    }
    let mut sum = Multivector::one();
    let mut term = Multivector::one();
    let mut k = 1u32;
    loop {
        term = term.wedge(x).div_exact(&BigInt::from(k))?;
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    Ok(sum)
}

/// Pairing with the orientation class: the coefficient of `a1 b1 ... ag bg`.
pub fn top_pairing(x: &Multivector, topo: &SurfaceTopology) -> BigInt {
    x.coefficient(topo.top_blade())
}

pub fn grade_part(x: &Multivector, k: u32) -> Multivector {
    x.grade_part(k)
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (blade, coeff) in rhs.terms() {
            out.add_term(blade, coeff.clone());
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (blade, coeff) in rhs.terms() {
            out.add_term(blade, -coeff);
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(&BigInt::from(-1))
    }
}

fn blade_labels(blade: Blade) -> Vec<String> {
    (0..64)
        .filter(|i| blade & (1u64 << i) != 0)
        .map(SurfaceTopology::label)
        .collect()
}

/// Canonical display key: lower grades first, then lexicographic in the
/// generator order.
fn display_key(blade: Blade) -> (u32, Vec<u32>) {
    (grade(blade), (0..64).filter(|i| blade & (1u64 << i) != 0).collect())
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by_key(|(b, _)| display_key(**b));
        for (idx, (blade, coeff)) in entries.into_iter().enumerate() {
            let negative = coeff.is_negative();
            let magnitude = coeff.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *blade == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{}", blade_labels(*blade).join("^"))?;
        }
        Ok(())
    }
}

struct FormParser<'a> {
    src: &'a [u8],
    pos: usize,
    topo: &'a SurfaceTopology,
}

impl<'a> FormParser<'a> {
    fn new(text: &'a str, topo: &'a SurfaceTopology) -> Self {
        FormParser { src: text.as_bytes(), pos: 0, topo }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn generator(&mut self) -> Result<u32> {
        let kind = match self.peek() {
            Some(b'a') => 0,
            Some(b'b') => 1,
            _ => return self.err("expected generator a<k> or b<k>"),
        };
        self.pos += 1;
        let at = self.pos;
        let index = self.number()?.to_u32().filter(|k| *k >= 1);
        match index {
            Some(k) if k <= self.topo.genus() => Ok(2 * (k - 1) + kind),
            _ => Err(Error::Syntax {
                pos: at,
                msg: format!("generator index out of range for genus {}", self.topo.genus()),
            }),
        }
    }

    fn blade(&mut self) -> Result<Multivector> {
        let mut acc = Multivector::generator(self.generator()?);
        while self.peek() == Some(b'^') {
            self.pos += 1;
            acc = acc.wedge(&Multivector::generator(self.generator()?));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Multivector> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok(self.blade()?.scale(&n))
                } else {
                    Ok(Multivector::scalar(n))
                }
            }
            Some(b'a') | Some(b'b') => self.blade(),
            _ => self.err("expected integer or blade"),
        }
    }

    fn parse(mut self) -> Result<Multivector> {
        let mut negative = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negative = true;
        }
        let mut acc = Multivector::zero();
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => break,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
        Ok(acc)
    }
}
