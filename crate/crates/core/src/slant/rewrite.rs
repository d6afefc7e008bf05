//! Reduction of slant expressions to [`NormalForm`].
//!
//! A generator `<c . c' | beta>` with more than one atom is split on its
//! first atom:
//!
//! * `pt`:  `<c|pt> <c'|pt>`
//! * `g_j`: `(-1)^{deg c'} <c|g_j> <c'|pt> + <c|pt> <c'|g_j>`
//! * `S`:   `<c|S> <c'|pt> + <c|pt> <c'|S>
//!           - (-1)^{deg c'} sum_{i,j} <c|g_i> <c'|g_j> (g_i . g_j)`
//!
//! Base-class atoms leave the cup product by capping with the curve class:
//! `<c . k0[e] | S> = k0(e) <c|pt>`, and they kill `pt` and loop bases.
//! Degree-matched generators become integers: `<c1|S> = -deg E` and the
//! empty cup over `pt` is `1`.

use num_bigint::BigInt;

use super::ast::{Atom, Base, Slant, SlantExpr};
use super::normal::NormalForm;
use super::AlgebraContext;
use crate::error::{Error, Result};
use crate::exterior::SurfaceTopology;

pub fn normalize(e: &SlantExpr, ctx: &AlgebraContext) -> Result<NormalForm> {
    Ok(match e {
        SlantExpr::Int(n) => NormalForm::constant(n.clone()),
        SlantExpr::Slant(s) => reduce_slant(s, ctx)?,
        SlantExpr::Neg(a) => normalize(a, ctx)?.neg(),
        SlantExpr::Add(a, b) => normalize(a, ctx)?.add(&normalize(b, ctx)?),
        SlantExpr::Sub(a, b) => normalize(a, ctx)?.sub(&normalize(b, ctx)?),
        SlantExpr::Mul(a, b) => normalize(a, ctx)?.mul(&normalize(b, ctx)?),
        SlantExpr::Pow(a, k) => normalize(a, ctx)?.pow(*k),
    })
}

fn check_atoms(s: &Slant, ctx: &AlgebraContext) -> Result<()> {
    for atom in &s.cup {
        match atom {
            Atom::Chern(i) if *i < 1 || *i > ctx.r() => {
                return Err(Error::Context(format!("c{i} out of range for rank {}", ctx.r())));
            }
            Atom::BaseClass(name) if !ctx.has_base_class(name) => {
                return Err(Error::Context(format!("unknown base class k0[{name}]")));
            }
            _ => {}
        }
    }
    if let Base::Loop(j) = s.base {
        if j < 1 || j > 2 * ctx.genus() {
            return Err(Error::Context(format!("g{j} out of range for genus {}", ctx.genus())));
        }
    }
    Ok(())
}

pub fn reduce_slant(s: &Slant, ctx: &AlgebraContext) -> Result<NormalForm> {
    check_atoms(s, ctx)?;
    Ok(reduce(&s.cup, s.base, ctx))
}

fn cup_degree(cup: &[Atom]) -> u32 {
    cup.iter().map(Atom::degree).sum()
}

fn sign_of(deg: u32) -> BigInt {
    if deg % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// Reduction of a validated generator.
fn reduce(cup: &[Atom], base: Base, ctx: &AlgebraContext) -> NormalForm {
    if let Some(pos) = cup.iter().position(|a| matches!(a, Atom::BaseClass(_))) {
        let Atom::BaseClass(name) = &cup[pos] else { unreachable!() };
        let value = ctx.base_class_value(name).expect("validated base class");
        return match base {
            Base::Surface => {
                let rest: Vec<Atom> = cup
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != pos)
                    .map(|(_, a)| a.clone())
                    .collect();
                reduce(&rest, Base::Point, ctx).scale(&BigInt::from(value))
            }
            Base::Point | Base::Loop(_) => NormalForm::zero(),
        };
    }

    match cup {
        [] => match base {
            Base::Point => NormalForm::one(),
            Base::Loop(_) | Base::Surface => NormalForm::zero(),
        },
        [Atom::Chern(i)] => match base {
            Base::Point => NormalForm::u(*i),
            Base::Loop(j) => NormalForm::g(*i, j),
            Base::Surface if *i == 1 => NormalForm::constant(ctx.c1_surface_value()),
            Base::Surface => NormalForm::v(*i),
        },
        [first, rest @ ..] => {
            let head = std::slice::from_ref(first);
            let rest_sign = sign_of(cup_degree(rest));
            match base {
                Base::Point => reduce(head, Base::Point, ctx).mul(&reduce(rest, Base::Point, ctx)),
                Base::Loop(j) => {
                    let lhs = reduce(head, Base::Loop(j), ctx)
                        .mul(&reduce(rest, Base::Point, ctx))
                        .scale(&rest_sign);
                    let rhs = reduce(head, Base::Point, ctx).mul(&reduce(rest, Base::Loop(j), ctx));
                    lhs.add(&rhs)
                }
                Base::Surface => {
                    let mut out = reduce(head, Base::Surface, ctx)
                        .mul(&reduce(rest, Base::Point, ctx))
                        .add(&reduce(head, Base::Point, ctx).mul(&reduce(rest, Base::Surface, ctx)));
                    let topo = SurfaceTopology::new(ctx.genus()).expect("validated genus");
                    let mut correction = NormalForm::zero();
                    for i in 0..topo.rank() {
                        for j in 0..topo.rank() {
                            let pairing = topo.intersection(i, j);
                            if pairing == 0 {
                                continue;
                            }
                            let term = reduce(head, Base::Loop(i + 1), ctx)
                                .mul(&reduce(rest, Base::Loop(j + 1), ctx))
                                .scale(&BigInt::from(pairing));
                            correction = correction.add(&term);
                        }
                    }
                    out = out.sub(&correction.scale(&rest_sign));
                    out
                }
            }
        }
    }
}
