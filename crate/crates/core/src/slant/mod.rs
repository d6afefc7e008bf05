//! The algebra generated by slant products `<c|beta>` of universal classes of
//! `U(r)` (and degree-2 background classes) with homology classes of the
//! curve, reduced to the polynomial-exterior normal form
//! `Z[u_1..u_r, v_2..v_r] (x) Lambda[G[i,j]]`.

mod ast;
mod eval;
mod normal;
mod parse;
mod rewrite;

use std::collections::BTreeMap;

pub use ast::{Atom, Base, Slant, SlantExpr};
pub use eval::evaluate_abelian;
pub use normal::{print_normal, EvenGen, Monomial, NormalForm, OddGen};
pub use parse::parse_expr;
pub use rewrite::{normalize, reduce_slant};

use crate::error::{input, Result};
use crate::exterior::MAX_GENUS;

/// Structure-group rank, curve genus, kernel degree and the values of the
/// declared degree-2 background classes on the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraContext {
    r: u32,
    genus: u32,
    scalar_degree: i64,
    k0_eval: BTreeMap<String, i64>,
}

impl AlgebraContext {
    pub fn new(r: u32, genus: u32, scalar_degree: i64) -> Result<Self> {
        if r < 1 {
            return input("rank r must be at least 1");
        }
        if genus > MAX_GENUS {
            return input(format!("genus {genus} exceeds supported maximum {MAX_GENUS}"));
        }
        Ok(AlgebraContext { r, genus, scalar_degree, k0_eval: BTreeMap::new() })
    }

    /// Declares a degree-2 background class with `<kappa0^* c0, [S]> = value`.
    pub fn with_base_class(mut self, name: impl Into<String>, value: i64) -> Self {
        self.k0_eval.insert(name.into(), value);
        self
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Degree of the kernel bundle `E`.
    pub fn scalar_degree(&self) -> i64 {
        self.scalar_degree
    }

    pub fn base_classes(&self) -> &BTreeMap<String, i64> {
        &self.k0_eval
    }

    pub fn has_base_class(&self, name: &str) -> bool {
        self.k0_eval.contains_key(name)
    }

    pub fn base_class_value(&self, name: &str) -> Option<i64> {
        self.k0_eval.get(name).copied()
    }

    /// `<c1|S>`: the universal bundle is dual to the kernel, so this is
    /// `-deg E`.
    pub fn c1_surface_value(&self) -> i64 {
        -self.scalar_degree
    }
}
