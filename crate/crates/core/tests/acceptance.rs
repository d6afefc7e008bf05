//! Acceptance gate: one PASS/FAIL line per criterion, exact comparisons only.
//! Runs without the libtest harness so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ruledgw::check::{bridge_suite, dictionary_suite, oracle_suite, quot_count_suite, CheckBounds, SuiteReport};
use ruledgw::exterior::{exp_even, theta_class, top_pairing, wedge, Multivector, SurfaceTopology};
use ruledgw::grid::ExecMode;
use ruledgw::index::{
    chamber_classify, index_wc, intersect, spinc_det, BundleType, Chamber, ChamberParams, H2Class,
    RuledSurface,
};
use ruledgw::invariants::{sw_for_class, sw_ruled};
use ruledgw::slant::{
    normalize, parse_expr, print_normal, AlgebraContext, Atom, Base, NormalForm, SlantExpr,
};

const SEED: u64 = 0x5eed_2026;

type Outcome = Result<String, String>;

fn suite(report: SuiteReport) -> Outcome {
    match report.first_counterexample {
        None => Ok(format!("{} cases", report.cases)),
        Some(ce) => Err(format!("{}/{} failed; first: {ce}", report.failed, report.cases)),
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn quot_count() -> Outcome {
    let bounds = CheckBounds { max_genus: 5, max_r0: 5, max_deg: 0 };
    suite(quot_count_suite(&bounds, ExecMode::default()))
}

fn oracle_equivalence() -> Outcome {
    suite(oracle_suite(&CheckBounds::default(), ExecMode::default()))
}

fn dictionary() -> Outcome {
    suite(dictionary_suite(&CheckBounds::default(), ExecMode::default()))
}

fn worked_instance() -> Outcome {
    let geom = RuledSurface::new(1, 0).map_err(|e| e.to_string())?;
    let c = spinc_det(1, 1, &geom);
    expect("c", c, H2Class::new(4, 2))?;
    expect("c^2", intersect(&c, &c, &geom), 16)?;
    expect("w_c", index_wc(&c, &geom).map_err(|e| e.to_string())?, 4)?;
    let one = sw_ruled(1, 1, &geom, &Multivector::one()).map_err(|e| e.to_string())?;
    let pair = Multivector::a(1).wedge(&Multivector::b(1));
    let ab = sw_ruled(1, 1, &geom, &pair).map_err(|e| e.to_string())?;
    expect("SW+(1)", one.plus(), BigInt::from(2))?;
    expect("SW+(a1^b1)", ab.plus(), BigInt::from(1))?;
    expect("SW-(1)", one.minus(), BigInt::from(0))?;
    expect("SW-(a1^b1)", ab.minus(), BigInt::from(0))?;
    Ok("c = 4s+2f, c^2 = 16, w_c = 4, SW+ = (2, 1), SW- = 0".into())
}

fn ruledgw(args: &[&str]) -> Result<serde_json::Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ruledgw"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}", out.status.code()));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn zero_laws() -> Outcome {
    let mut checked = 0;
    for g in 0..=4i64 {
        for d0 in -3..=3 {
            let geom = RuledSurface::new(g, d0).map_err(|e| e.to_string())?;
            for b in -4..=4 {
                let c = H2Class::new(0, 2 * b + d0);
                expect("<c,[F]>", intersect(&c, &H2Class::F, &geom), 0)?;
                for blade in 0..(1u64 << (2 * g)) {
                    let l = Multivector::from_blade(blade, 1);
                    let sw = sw_for_class(c, &geom, &l).map_err(|e| e.to_string())?;
                    expect("SW+", sw.plus(), BigInt::from(0))?;
                    expect("SW-", sw.minus(), BigInt::from(0))?;
                    checked += 1;
                }
            }
        }
    }
    let below = ChamberParams::from_tau(BigInt::from(1).into(), BundleType::line(-2));
    expect("chamber", chamber_classify(&below).map_err(|e| e.to_string())?, Chamber::Empty)?;
    let override_value = ruledgw(&["ggw", "--genus", "2", "--r0", "3", "--v", "2", "--chamber", "empty"])?;
    expect("ggw --chamber empty", override_value["result"]["value"].clone(), 0.into())?;
    let by_tau = ruledgw(&[
        "ggw-bundle", "--genus", "2", "--r0", "3", "--deg-e", "-2", "--deg-e0", "0", "--tau", "1",
    ])?;
    expect("ggw-bundle chamber", by_tau["result"]["chamber"].clone(), "empty".into())?;
    expect("ggw-bundle value", by_tau["result"]["value"].clone(), 0.into())?;
    Ok(format!("{checked} zero-pairing evaluations, CLI empty chamber = 0"))
}

fn random_slant(rng: &mut ChaCha8Rng, r: u32, g: u32) -> SlantExpr {
    let len = rng.gen_range(1..=3);
    let cup = (0..len)
        .map(|_| {
            if rng.gen_bool(0.15) {
                Atom::BaseClass("e0".into())
            } else {
                Atom::Chern(rng.gen_range(1..=r))
            }
        })
        .collect();
    let base = match rng.gen_range(0..3) {
        0 => Base::Point,
        1 => Base::Surface,
        _ if g > 0 => Base::Loop(rng.gen_range(1..=2 * g)),
        _ => Base::Point,
    };
    SlantExpr::slant(cup, base)
}

fn random_expr(rng: &mut ChaCha8Rng, r: u32, g: u32, depth: u32) -> SlantExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.2) {
            SlantExpr::int(rng.gen_range(0..=3))
        } else {
            random_slant(rng, r, g)
        };
    }
    let op = rng.gen_range(0..5);
    let lhs = random_expr(rng, r, g, depth - 1);
    match op {
        0 => lhs.neg(),
        1 => lhs.add(random_expr(rng, r, g, depth - 1)),
        2 => lhs.sub(random_expr(rng, r, g, depth - 1)),
        3 => lhs.mul(random_expr(rng, r, g, depth - 1)),
        _ => lhs.pow(rng.gen_range(0..=2)),
    }
}

fn algebra_engine() -> Outcome {
    for g in 0..=4u32 {
        let ctx = AlgebraContext::new(1, g, 2).map_err(|e| e.to_string())?;
        let nf = normalize(&parse_expr("<c1.c1|S>", &ctx).map_err(|e| e.to_string())?, &ctx)
            .map_err(|e| e.to_string())?;
        let mut want = NormalForm::u(1).scale(&BigInt::from(2 * ctx.c1_surface_value()));
        for k in 1..=g {
            want = want.sub(&NormalForm::g(1, 2 * k - 1).mul(&NormalForm::g(1, 2 * k)).scale(&BigInt::from(2)));
        }
        expect("<c1.c1|S>", nf, want)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let samples = 1000;
    for n in 0..samples {
        let (r, g) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
        let ctx = AlgebraContext::new(r, g, rng.gen_range(-3..=3))
            .map_err(|e| e.to_string())?
            .with_base_class("e0", 2);
        let a = random_expr(&mut rng, r, g, 4);
        let b = random_expr(&mut rng, r, g, 4);
        let fail = |what: &str| Err(format!("sample {n} ({what}): {a}"));
        let text = a.to_string();
        if parse_expr(&text, &ctx).ok().as_ref() != Some(&a) {
            return fail("round trip");
        }
        let (Ok(na), Ok(nb)) = (normalize(&a, &ctx), normalize(&b, &ctx)) else {
            return fail("normalize");
        };
        let reparsed = parse_expr(&print_normal(&na), &ctx).and_then(|e| normalize(&e, &ctx));
        if reparsed.as_ref() != Ok(&na) {
            return fail("normal form round trip");
        }
        for p in na.degrees() {
            for q in nb.degrees() {
                let (x, y) = (na.degree_part(p), nb.degree_part(q));
                let sign = BigInt::from(if (p * q) % 2 == 0 { 1 } else { -1 });
                if x.mul(&y) != y.mul(&x).scale(&sign) {
                    return fail("graded commutativity");
                }
            }
        }
    }
    let bridge = suite(bridge_suite(&CheckBounds::default(), ExecMode::default()))?;
    Ok(format!("<c1.c1|S> expansion g <= 4, {samples} fuzz samples, bridge {bridge}"))
}

fn exterior_core() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let random_mv = |rng: &mut ChaCha8Rng, g: u32, k: Option<u32>| {
        let mut x = Multivector::zero();
        for _ in 0..rng.gen_range(0..6) {
            let blade = rng.gen_range(0..(1u64 << (2 * g)));
            x = &x + &Multivector::from_blade(blade, rng.gen_range(-3i64..=3));
        }
        match k {
            Some(k) => x.grade_part(k),
            None => x,
        }
    };
    for _ in 0..500 {
        let g = rng.gen_range(0..=3u32);
        let t = SurfaceTopology::new(g).map_err(|e| e.to_string())?;
        let (p, q) = (rng.gen_range(0..=2 * g), rng.gen_range(0..=2 * g));
        let x = random_mv(&mut rng, g, Some(p));
        let y = random_mv(&mut rng, g, Some(q));
        let z = random_mv(&mut rng, g, None);
        let sign = BigInt::from(if (p * q) % 2 == 0 { 1 } else { -1 });
        let w = |a: &Multivector, b: &Multivector| wedge(a, b, &t).map_err(|e| e.to_string());
        expect("graded commutativity", w(&x, &y)?, w(&y, &x)?.scale(&sign))?;
        expect("associativity", w(&w(&x, &y)?, &z)?, w(&x, &w(&y, &z)?)?)?;
    }
    for g in 0..=6u32 {
        let t = SurfaceTopology::new(g).map_err(|e| e.to_string())?;
        let theta = theta_class(&t);
        let mut power = Multivector::one();
        let mut factorial = BigInt::from(1);
        for k in 1..=g {
            power = power.wedge(&theta);
            factorial *= k;
        }
        let normalized = power.div_exact(&factorial).map_err(|e| e.to_string())?;
        expect("top_pairing(Theta^g/g!)", top_pairing(&normalized, &t), BigInt::from(1))?;
        let e = exp_even(&theta, &t).map_err(|e| e.to_string())?;
        let f = exp_even(&-&theta, &t).map_err(|e| e.to_string())?;
        expect("exp(Theta) exp(-Theta)", e.wedge(&f), Multivector::one())?;
    }
    Ok("500 random triples, g <= 6 theta identities".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 quot count", quot_count),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 SW/GGW dictionary", dictionary),
        ("4 worked instance", worked_instance),
        ("5 zero laws", zero_laws),
        ("6 algebra engine", algebra_engine),
        ("7 exterior core", exterior_core),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS  criterion {name}: {note} ({secs:.2}s)"),
            Err(why) => {
                failures += 1;
                println!("FAIL  criterion {name}: {why} ({secs:.2}s)");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
