//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{
    ch, desk_scale_classes, padded_sweep, random_class, random_positive, random_rational, to_f64,
};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wallforge::charges::{
    central_charge, epsilon_bound, lambda, nu, q_form, rho, zhat, ComplexExact, PlanePoint,
};
use wallforge::chern::{discriminant, dual, frac, from_twists, int, twist};
use wallforge::destabilizers::{finiteness_probe, ProbeOptions};
use wallforge::polystab::{
    classify, classify_limit_type, compare_poly_phase, eventually_in, poly_charge, pt_config_check,
    rho_coeffs, ChargeMode, HalfPlane, LimitType, PhaseOrder, PolyCharge,
};
use wallforge::walls::tilt_wall;
use wallforge::{ChernCharacter, Scalar, Slope};

const SEED: u64 = 0x5EED_0001;

const LIMIT_1: Duration = Duration::from_millis(1);
const LIMIT_2: Duration = Duration::from_millis(100);
const LIMIT_3: Duration = Duration::from_secs(2);
const LIMIT_4: Duration = Duration::from_secs(1);
const LIMIT_5: Duration = Duration::from_secs(1);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(10);
const LIMIT_8: Duration = Duration::from_millis(1);
const LIMIT_9: Duration = Duration::from_secs(1);
const LIMIT_10: Duration = Duration::from_secs(10);

/// Exact checks; no numerical tolerance anywhere except the float phase oracle.
const PHASE_FLOAT_TOL: f64 = 0.0;

type Check = Result<(), String>;

type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_fixture() -> Check {
    let b = from_twists(&[(3, -1), (-1, -2)]);
    ensure(b == ch("2,-1,-1/2,5/6"), || {
        format!("from_twists gave {b:?}")
    })?;
    let v = ch("2,-1,-1/2");
    ensure(discriminant(&v) == int(3), || {
        format!("Delta = {}", discriminant(&v))
    })?;
    let d = dual(&ch("2,-1,-1/2,-1/6"));
    ensure(d == ch("2,1,-1/2,1/6"), || format!("dual = {d:?}"))
}

fn c2_polystab() -> Check {
    let expected = [
        (frac(-1, 1), LimitType::DT),
        (frac(-1, 2), LimitType::PT),
        (frac(0, 1), LimitType::LargeVolume),
        (frac(1, 2), LimitType::DualPT),
        (frac(1, 1), LimitType::DualDT),
    ];
    for (b, ty) in expected {
        let c = classify(&b);
        ensure(c.ty == ty, || {
            format!("b = {b}: {:?}, expected {ty:?}", c.ty)
        })?;
        ensure(c.witness.is_some(), || format!("b = {b}: no witness"))?;
    }
    for k in 1..=400 {
        let b = frac(-2, 1) + frac(4 * k, 401);
        let pt = pt_config_check(&rho_coeffs(&b)).holds;
        let rule = classify_limit_type(&b) == LimitType::PT;
        ensure(pt == rule, || {
            format!("b = {b}: pt_config_check {pt}, interval rule {rule}")
        })?;
    }
    Ok(())
}

fn nu_agrees(u: &ChernCharacter, v: &ChernCharacter, p: &PlanePoint) -> bool {
    let (tu, tv) = (twist(u, &p.beta), twist(v, &p.beta));
    let cross = rho(u, p) * tv.c1() == rho(v, p) * tu.c1();
    cross && (tu.c1().is_zero() || tv.c1().is_zero() || nu(u, p) == nu(v, p))
}

fn wall_points_agree(u: &ChernCharacter, v: &ChernCharacter) -> Check {
    let w = tilt_wall(u, v).map_err(|e| e.to_string())?;
    let x = &w.radius_sq / (int(1) + &w.radius_sq);
    for beta in [
        w.center_beta.clone(),
        &w.center_beta + &x,
        &w.center_beta - &x,
    ] {
        let p = w.point_at(&beta).ok_or("point outside chord")?;
        ensure(nu_agrees(u, v, &p), || {
            format!("nu differs at beta = {beta} for {u:?}, {v:?}")
        })?;
    }
    Ok(())
}

fn c3_tilt_walls() -> Check {
    let (u, v) = (ch("1,-1,1/2,-1/6"), ch("2,-1,-1/2,-1/6"));
    let w = tilt_wall(&u, &v).map_err(|e| e.to_string())?;
    ensure(w.key() == (frac(-3, 2), frac(1, 4)), || {
        format!("fixed wall {:?}", w.key())
    })?;
    wall_points_agree(&u, &v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut n = 1;
    while n < 500 {
        let (u, v) = (random_class(&mut rng), random_class(&mut rng));
        let d10 = u.v1() * v.v0() - u.v0() * v.v1();
        if d10.is_zero() || tilt_wall(&u, &v).is_err() {
            continue;
        }
        wall_points_agree(&u, &v)?;
        n += 1;
    }
    Ok(())
}

fn c4_q_form() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    for _ in 0..500 {
        let v = random_class(&mut rng);
        let p = PlanePoint::new(
            random_rational(&mut rng, 40, 12),
            random_positive(&mut rng, 40, 12),
        )
        .unwrap();
        let k = random_positive(&mut rng, 20, 6);
        let c = twist(&v, &p.beta);
        let rhs =
            &k * &p.t * discriminant(&v) + int(4) * c.c2() * c.c2() - int(6) * c.c1() * c.c3();
        let lhs = q_form(&v, &p, &k);
        ensure(lhs == rhs, || format!("q_form {lhs} != {rhs} for {v:?}"))?;
        ensure(c.discriminant() == discriminant(&v), || {
            format!("Delta not twist-invariant for {v:?}")
        })?;
    }
    Ok(())
}

fn c5_lambda() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let minus_i = ComplexExact::new(int(0), int(-1));
    for _ in 0..500 {
        let v = random_class(&mut rng);
        let p = PlanePoint::new(
            random_rational(&mut rng, 40, 12),
            random_positive(&mut rng, 40, 12),
        )
        .unwrap();
        let s = random_positive(&mut rng, 12, 6);
        let z = central_charge(&v, &p, &s);
        match lambda(&v, &p, &s) {
            Slope::Finite(l) => ensure(!z.im.is_zero() && l == -&z.re / &z.im, || {
                format!("lambda mismatch for {v:?}")
            })?,
            Slope::Infinite => ensure(z.im.is_zero(), || {
                format!("infinite lambda with Im Z != 0 for {v:?}")
            })?,
        }
        ensure(zhat(&v, &p, &s) == &minus_i * &z, || {
            format!("Zhat mismatch for {v:?}")
        })?;
    }
    Ok(())
}

fn c6_enumeration() -> Check {
    let classes = desk_scale_classes();
    let mut hits = 0;
    for v in &classes {
        let r = padded_sweep(v, 1, 16);
        ensure(r.missing.is_empty(), || {
            format!("{v:?}: missing {:?}", r.missing)
        })?;
        ensure(r.unsound.is_empty(), || {
            format!("{v:?}: unsound {:?}", r.unsound)
        })?;
        hits += r.oracle_hits;
    }
    ensure(hits > 0, || "sweep found no candidates at all".into())
}

fn c7_finiteness() -> Check {
    let v = ch("2,-1,-1/2,-1/6");
    let s = frac(1, 3);
    let mut prev: Option<usize> = None;
    for t_min in [frac(1, 4), frac(1, 8), frac(1, 16)] {
        let r =
            finiteness_probe(&v, &t_min, &s, ProbeOptions::default()).map_err(|e| e.to_string())?;
        ensure(!r.truncated, || format!("t_min = {t_min}: truncated"))?;
        ensure(r.consistent, || {
            format!("t_min = {t_min}: inconsistent {:?}", r.inconsistent)
        })?;
        if let Some(p) = prev {
            ensure(r.tilt_walls >= p, || {
                format!("t_min = {t_min}: {} walls < {p}", r.tilt_walls)
            })?;
        }
        prev = Some(r.tilt_walls);
    }
    ensure(prev.unwrap_or(0) > 0, || {
        "no tilt walls at t_min = 1/16".into()
    })
}

fn c8_epsilon() -> Check {
    let p = PlanePoint::new(frac(-2, 1), frac(3, 2)).unwrap();
    let e = epsilon_bound(&ch("2,-1,-1/2"), &p).map_err(|e| e.to_string())?;
    ensure(e == frac(13, 12), || format!("epsilon = {e}"))?;
    ensure(e >= frac(5, 6), || "epsilon < 5/6".into())
}

fn phase_f64(z: &PolyCharge, m: f64) -> f64 {
    let (mut re, mut im) = (0.0, 0.0);
    for c in z.coeff.iter().rev() {
        re = re * m + to_f64(&c.re);
        im = im * m + to_f64(&c.im);
    }
    im.atan2(re) / std::f64::consts::PI
}

/// The charge of `v` or of `-v`, whichever lies in the upper half-plane for `m >> 0`.
fn admissible(v: &ChernCharacter, b: &Scalar) -> Option<PolyCharge> {
    let z = poly_charge(v, &ChargeMode::RhoOfB(b.clone())).ok()?;
    if z.is_zero() {
        return None;
    }
    let neg = z.scale(&int(-1));
    [z, neg]
        .into_iter()
        .find(|c| eventually_in(c, &HalfPlane::upper()))
}

fn c9_comparator() -> Check {
    let b = int(0);
    let mode = ChargeMode::RhoOfB(b.clone());
    for n in 1..=3 {
        for (c, d) in [(1, 0), (2, -1), (1, 5), (3, 7)] {
            let f = poly_charge(
                &ChernCharacter::new(int(0), int(0), int(0), int(n)).unwrap(),
                &mode,
            )
            .unwrap();
            let e = poly_charge(
                &ChernCharacter::new(int(0), int(0), int(c), int(d)).unwrap(),
                &mode,
            )
            .unwrap();
            let exact = compare_poly_phase(&f, &e).map_err(|e| e.to_string())?;
            ensure(exact == PhaseOrder::Succeeds, || {
                format!("n={n}, (c,d)=({c},{d}): {exact:?}")
            })?;
            for m in [1e3, 1e6] {
                let (pf, pe) = (phase_f64(&f, m), phase_f64(&e, m));
                ensure(pf - pe > PHASE_FLOAT_TOL, || {
                    format!("m={m}: phi(F)={pf}, phi(E)={pe}")
                })?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut n = 0;
    while n < 200 {
        let b = random_rational(&mut rng, 8, 4);
        let zs: Vec<_> = (0..3)
            .filter_map(|_| admissible(&random_class(&mut rng), &b))
            .collect();
        if zs.len() < 3 {
            continue;
        }
        let cmp = |i: usize, j: usize| compare_poly_phase(&zs[i], &zs[j]).unwrap();
        let le = |o: PhaseOrder| o != PhaseOrder::Succeeds;
        if le(cmp(0, 1)) && le(cmp(1, 2)) {
            ensure(le(cmp(0, 2)), || format!("not transitive at b = {b}"))?;
            if cmp(0, 1) == PhaseOrder::Precedes || cmp(1, 2) == PhaseOrder::Precedes {
                ensure(cmp(0, 2) == PhaseOrder::Precedes, || {
                    format!("strictness lost at b = {b}")
                })?;
            }
        }
        ensure(cmp(1, 0) == flip(cmp(0, 1)), || {
            format!("not antisymmetric at b = {b}")
        })?;
        n += 1;
    }
    Ok(())
}

fn flip(o: PhaseOrder) -> PhaseOrder {
    match o {
        PhaseOrder::Precedes => PhaseOrder::Succeeds,
        PhaseOrder::Succeeds => PhaseOrder::Precedes,
        PhaseOrder::Equal => PhaseOrder::Equal,
    }
}

fn c10_cli_determinism() -> Check {
    for format in ["json", "csv", "svg"] {
        let args = [
            "walls",
            "--v",
            "2,-1,-1/2,-1/6",
            "--s",
            "1/3",
            "--t-min",
            "1/16",
            "--format",
            format,
        ];
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            for _ in 0..3 {
                let o = Command::new(env!("CARGO_BIN_EXE_wallforge"))
                    .args(args)
                    .env("WALLFORGE_THREADS", threads)
                    .output()
                    .map_err(|e| e.to_string())?;
                ensure(o.status.success(), || {
                    format!("{format}: exit {:?}", o.status.code())
                })?;
                outputs.push(o.stdout);
            }
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || {
            format!("{format}: outputs differ")
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "twist fixture, discriminant and dual bookkeeping",
            c1_fixture,
            LIMIT_1,
        ),
        (
            "polynomial-stability classification and interval rule",
            c2_polystab,
            LIMIT_2,
        ),
        ("tilt-wall oracle on 500 pairs", c3_tilt_walls, LIMIT_3),
        (
            "Q-form identity and twist-invariant discriminant",
            c4_q_form,
            LIMIT_4,
        ),
        ("lambda and rotated-charge identities", c5_lambda, LIMIT_5),
        (
            "enumeration soundness and completeness at desk scale",
            c6_enumeration,
            LIMIT_6,
        ),
        ("finiteness probe consistency", c7_finiteness, LIMIT_7),
        ("epsilon bound at the wall-free point", c8_epsilon, LIMIT_8),
        ("asymptotic phase comparator", c9_comparator, LIMIT_9),
        (
            "CLI determinism across runs and thread counts",
            c10_cli_determinism,
            LIMIT_10,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= *limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over time limit {limit:?})"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict} criterion {}: {name} [{elapsed:?}]", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
