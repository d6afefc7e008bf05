//! Cross-validation grids run by the `check` subcommand.
//!
//! Each suite enumerates its cases up front, evaluates them through
//! [`map_cases`] and keeps the first failing case in enumeration order, so a
//! report is identical in sequential and parallel mode.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::exterior::{Blade, Multivector};
use crate::grid::{map_cases, ExecMode};
use crate::index::{
    abelian_v, douady_index, index_wc, intersect, spinc_det, sym_power_degree, H2Class,
    RuledSurface,
};
use crate::invariants::{ggw_abelian, quot_count, sw_equals_ggw_check};
use crate::pic_oracle::{ggw_via_segre, min_aux_twist};
use crate::slant::{evaluate_abelian, normalize, parse_expr, AlgebraContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckBounds {
    pub max_genus: u32,
    pub max_r0: i64,
    pub max_deg: i64,
}

impl Default for CheckBounds {
    fn default() -> Self {
        CheckBounds { max_genus: 4, max_r0: 4, max_deg: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    fn from_outcomes(name: &'static str, outcomes: Vec<Result<(), String>>) -> Self {
        let cases = outcomes.len();
        let mut failed = 0;
        let mut first = None;
        for outcome in outcomes {
            if let Err(msg) = outcome {
                failed += 1;
                first.get_or_insert(msg);
            }
        }
        SuiteReport { name, cases, failed, first_counterexample: first }
    }

    pub fn passed(&self) -> usize {
        self.cases - self.failed
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub suites: Vec<SuiteReport>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }

    pub fn passed(&self) -> usize {
        self.suites.iter().map(SuiteReport::passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }
}

/// All basis blades of `Lambda^* H_1` for genus `g`.
pub fn basis_monomials(g: u32) -> impl Iterator<Item = Blade> {
    0..(1u64 << (2 * g))
}

/// `<c1|g_j>` product text for a blade, in generator order.
fn blade_as_slant(blade: Blade) -> String {
    let mut out = String::new();
    for j in 0..64 {
        if blade & (1u64 << j) != 0 {
            if !out.is_empty() {
                out.push('*');
            }
            let _ = write!(out, "<c1|g{}>", j + 1);
        }
    }
    out
}

fn mismatch<T: std::fmt::Display>(what: &str, case: &str, got: T, want: T) -> Result<(), String> {
    Err(format!("{what} at {case}: got {got}, expected {want}"))
}

/// `quot_count = r0^g`, and the closed formula with `l = 1` reproduces it for
/// `v` in `{g, g+1, g+2}`.
pub fn quot_count_suite(bounds: &CheckBounds, mode: ExecMode) -> SuiteReport {
    let cases: Vec<(u32, i64)> = (0..=bounds.max_genus)
        .flat_map(|g| (1..=bounds.max_r0).map(move |r0| (g, r0)))
        .collect();
    let outcomes = map_cases(&cases, mode, |&(g, r0)| {
        let case = format!("g={g} r0={r0}");
        let want: BigInt = Pow::pow(BigInt::from(r0), g);
        let count = quot_count(g, r0).map_err(|e| e.to_string())?;
        if count != want {
            return mismatch("quot_count", &case, count, want);
        }
        for v in i64::from(g)..=i64::from(g) + 2 {
            let got = ggw_abelian(g, r0, v, &Multivector::one()).map_err(|e| e.to_string())?;
            if got != want {
                return mismatch("ggw_abelian(l=1)", &format!("{case} v={v}"), got, want);
            }
        }
        Ok(())
    });
    SuiteReport::from_outcomes("quot_count", outcomes)
}

fn oracle_cases(bounds: &CheckBounds) -> Vec<(u32, i64, i64, i64, Blade)> {
    let mut cases = Vec::new();
    for g in 0..=bounds.max_genus {
        for r0 in 1..=bounds.max_r0 {
            for d in -bounds.max_deg..=bounds.max_deg {
                for d0 in -bounds.max_deg..=bounds.max_deg {
                    cases.extend(basis_monomials(g).map(|l| (g, r0, d, d0, l)));
                }
            }
        }
    }
    cases
}

/// Closed formula against the Segre-class computation, at two twists.
pub fn oracle_suite(bounds: &CheckBounds, mode: ExecMode) -> SuiteReport {
    let cases = oracle_cases(bounds);
    let outcomes = map_cases(&cases, mode, |&(g, r0, d, d0, blade)| {
        let case = format!("g={g} r0={r0} d={d} d0={d0} l={}", Multivector::from_blade(blade, 1));
        let l = Multivector::from_blade(blade, 1);
        let v = abelian_v(r0, d, d0, i64::from(g));
        let closed = ggw_abelian(g, r0, v, &l).map_err(|e| format!("{case}: {e}"))?;
        let t0 = min_aux_twist(g, r0, d, d0);
        for twist in [t0, t0 + 2] {
            let via = ggw_via_segre(g, r0, d, d0, twist, &l).map_err(|e| format!("{case}: {e}"))?;
            if via != closed {
                return mismatch("segre route", &format!("{case} twist={twist}"), via, closed);
            }
        }
        Ok(())
    });
    SuiteReport::from_outcomes("segre_oracle", outcomes)
}

/// Ruled-surface index identities and the Seiberg-Witten / Gromov-Witten
/// comparison for `n <= max_r0 - 1`.
pub fn dictionary_suite(bounds: &CheckBounds, mode: ExecMode) -> SuiteReport {
    let mut cases = Vec::new();
    for g in 0..=i64::from(bounds.max_genus) {
        for d in -bounds.max_deg..=bounds.max_deg {
            for n in 0..bounds.max_r0 {
                for d0 in -bounds.max_deg..=bounds.max_deg {
                    cases.push((g, d, n, d0));
                }
            }
        }
    }
    let outcomes = map_cases(&cases, mode, |&(g, d, n, d0)| {
        let case = format!("g={g} d={d} n={n} d0={d0}");
        let geom = RuledSurface::new(g, d0).map_err(|e| e.to_string())?;
        let v = abelian_v(n + 1, -d, sym_power_degree(n, d0), g);
        let c = spinc_det(d, n, &geom);
        let w = index_wc(&c, &geom).map_err(|e| format!("{case}: {e}"))?;
        if w != 2 * v {
            return mismatch("w_c", &case, w, 2 * v);
        }
        let m = H2Class::line_bundle(d, n);
        let dou = douady_index(&m, &geom).map_err(|e| format!("{case}: {e}"))?;
        if dou != v {
            return mismatch("douady_index", &case, dou, v);
        }
        let pair = intersect(&c, &H2Class::F, &geom);
        if pair != 2 * n + 2 {
            return mismatch("<c,[F]>", &case, pair, 2 * n + 2);
        }
        for blade in basis_monomials(g as u32) {
            let l = Multivector::from_blade(blade, 1);
            let same = sw_equals_ggw_check(d, n, &geom, &l).map_err(|e| format!("{case}: {e}"))?;
            if !same {
                return Err(format!("SW != GGW at {case} l={l}"));
            }
        }
        Ok(())
    });
    SuiteReport::from_outcomes("sw_dictionary", outcomes)
}

/// The slant-algebra route: normalize `sum_{a<=v} u^a * l` and evaluate.
pub fn bridge_suite(bounds: &CheckBounds, mode: ExecMode) -> SuiteReport {
    let cases = oracle_cases(bounds);
    let outcomes = map_cases(&cases, mode, |&(g, r0, d, d0, blade)| {
        let l = Multivector::from_blade(blade, 1);
        let case = format!("g={g} r0={r0} d={d} d0={d0} l={l}");
        let v = abelian_v(r0, d, d0, i64::from(g));
        let lambda = blade_as_slant(blade);
        let mut terms = Vec::new();
        for a in 0..=v {
            let mut term = format!("<c1|pt>^{a}");
            if !lambda.is_empty() {
                term.push('*');
                term.push_str(&lambda);
            }
            terms.push(term);
        }
        let text = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        let ctx = AlgebraContext::new(1, g, d).map_err(|e| e.to_string())?;
        let expr = parse_expr(&text, &ctx).map_err(|e| format!("{case}: {e}"))?;
        let nf = normalize(&expr, &ctx).map_err(|e| format!("{case}: {e}"))?;
        let got = evaluate_abelian(&nf, g, r0, v).map_err(|e| format!("{case}: {e}"))?;
        let want = ggw_abelian(g, r0, v, &l).map_err(|e| format!("{case}: {e}"))?;
        if got != want {
            return mismatch("evaluate_abelian", &case, got, want);
        }
        Ok(())
    });
    SuiteReport::from_outcomes("slant_bridge", outcomes)
}

pub fn run_check(bounds: &CheckBounds, mode: ExecMode) -> CheckReport {
    let suites = vec![
        quot_count_suite(bounds, mode),
        oracle_suite(bounds, mode),
        dictionary_suite(bounds, mode),
        bridge_suite(bounds, mode),
    ];
    for s in &suites {
        log::info!("{}: {}/{} passed", s.name, s.passed(), s.cases);
    }
    CheckReport { suites }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes_in_both_modes() {
        let bounds = CheckBounds { max_genus: 2, max_r0: 2, max_deg: 1 };
        let seq = run_check(&bounds, ExecMode::Sequential);
        let par = run_check(&bounds, ExecMode::Parallel);
        assert!(seq.ok(), "{seq:?}");
        assert_eq!(seq, par);
    }

    #[test]
    fn blade_text() {
        assert_eq!(blade_as_slant(0), "");
        assert_eq!(blade_as_slant(0b1010), "<c1|g2>*<c1|g4>");
    }
}
