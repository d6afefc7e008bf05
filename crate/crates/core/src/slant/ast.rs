use std::fmt;

use num_bigint::BigInt;

/// Cohomology class entering a cup product inside a slant generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Universal Chern class `c_i` of the structure group `U(r)`.
    Chern(u32),
    /// Degree-2 class pulled back from the classifying space of the
    /// background group, referenced by name.
    BaseClass(String),
}

impl Atom {
    pub fn degree(&self) -> u32 {
        match self {
            Atom::Chern(i) => 2 * i,
            Atom::BaseClass(_) => 2,
        }
    }
}

/// Homology class of the curve the slant product is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Point,
    Surface,
    /// The `j`-th basis loop, 1-based: `g(2k-1) = a_k`, `g(2k) = b_k`.
    Loop(u32),
}

impl Base {
    pub fn degree(&self) -> u32 {
        match self {
            Base::Point => 0,
            Base::Loop(_) => 1,
            Base::Surface => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slant {
    pub cup: Vec<Atom>,
    pub base: Base,
}

impl Slant {
    pub fn new(cup: Vec<Atom>, base: Base) -> Self {
        Slant { cup, base }
    }

    /// `deg c - deg beta`.
    pub fn degree(&self) -> i64 {
        let cup: u32 = self.cup.iter().map(Atom::degree).sum();
        i64::from(cup) - i64::from(self.base.degree())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SlantExpr {
    Int(BigInt),
    Slant(Slant),
    Neg(Box<SlantExpr>),
    Add(Box<SlantExpr>, Box<SlantExpr>),
    Sub(Box<SlantExpr>, Box<SlantExpr>),
    Mul(Box<SlantExpr>, Box<SlantExpr>),
    Pow(Box<SlantExpr>, u32),
}

impl SlantExpr {
    pub fn int(n: impl Into<BigInt>) -> Self {
        SlantExpr::Int(n.into())
    }

    pub fn slant(cup: Vec<Atom>, base: Base) -> Self {
        SlantExpr::Slant(Slant::new(cup, base))
    }

    pub fn add(self, rhs: SlantExpr) -> Self {
        SlantExpr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: SlantExpr) -> Self {
        SlantExpr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: SlantExpr) -> Self {
        SlantExpr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn pow(self, exp: u32) -> Self {
        SlantExpr::Pow(Box::new(self), exp)
    }

    pub fn neg(self) -> Self {
        SlantExpr::Neg(Box::new(self))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Chern(i) => write!(f, "c{i}"),
            Atom::BaseClass(name) => write!(f, "k0[{name}]"),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Point => write!(f, "pt"),
            Base::Surface => write!(f, "S"),
            Base::Loop(j) => write!(f, "g{j}"),
        }
    }
}

impl fmt::Display for Slant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, atom) in self.cup.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{atom}")?;
        }
        write!(f, "|{}>", self.base)
    }
}

/// Fully parenthesized rendering. Parses back to an equal tree; negative
/// integer leaves come back as `0 - n`.
impl fmt::Display for SlantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlantExpr::Int(n) if n.sign() == num_bigint::Sign::Minus => write!(f, "(0{n})"),
            SlantExpr::Int(n) => write!(f, "{n}"),
            SlantExpr::Slant(s) => write!(f, "{s}"),
            SlantExpr::Neg(e) => write!(f, "(-{e})"),
            SlantExpr::Add(a, b) => write!(f, "({a}+{b})"),
            SlantExpr::Sub(a, b) => write!(f, "({a}-{b})"),
            SlantExpr::Mul(a, b) => write!(f, "({a}*{b})"),
            SlantExpr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}
