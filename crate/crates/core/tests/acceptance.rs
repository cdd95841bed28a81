//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the summary always prints.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fprect::contraction::{
    check_all, check_pair_by_label, compute_m_convex, compute_m_max, make_preset, ContractionInstance, InstanceSpec,
    Preset, SelfMap, Variant,
};
use fprect::fixtures;
use fprect::functions::{
    check_monotone_tripled, default_cclass_tolerance, grid_1d, grid_2d, verify_cclass, FunctionSpec,
};
use fprect::rational::{int, rat, ten_pow_neg};
use fprect::solver::{check_vanishing, picard_iterate, uniqueness_scan, verify_decreasing, verify_fixed_point, Status};
use fprect::spaces::{
    check_b_rectangular, check_b_triangle, check_rectangular, check_triangle, generate_random_space, minimal_b_rect_s,
    scan_axiom, Axiom, GeneralizedMetricSpace, RandomProfile, ScanOptions,
};
use fprect::{Rational, Value};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn exact(v: &Value) -> Result<Rational, String> {
    v.as_rational()
        .cloned()
        .ok_or_else(|| format!("expected an exact value, got {v}"))
}

fn space_separations() -> Outcome {
    let space = fixtures::main_space(&fixtures::main_default_step());
    let opts = ScanOptions::all_witnesses();
    let path = ["1/5", "1/16", "1/9"];

    let tri = check_triangle(&space, opts);
    ensure!(!tri.verdict, "triangle inequality reported as holding");
    let w = tri.witness(&path).ok_or("triangle witness (1/5, 1/16, 1/9) missing")?;
    ensure!(
        w.lhs == rat(1, 2) && w.rhs == rat(3, 20),
        "triangle witness {} > {}",
        w.lhs,
        w.rhs
    );

    let bt = check_b_triangle(&space, &int(3), opts).map_err(|e| e.to_string())?;
    ensure!(!bt.verdict, "b-triangle reported as holding");
    let w = bt.witness(&path).ok_or("b-triangle witness missing")?;
    ensure!(
        w.lhs == rat(1, 2) && w.rhs == rat(9, 20),
        "b-triangle witness {} > {}",
        w.lhs,
        w.rhs
    );

    let rect = check_rectangular(&space, opts);
    ensure!(!rect.verdict, "rectangular inequality reported as holding");
    let w = rect
        .witness(&["1/5", "1/16", "0", "1/9"])
        .ok_or("rectangular witness missing")?;
    // 1/10 + 1/20 + 1/10
    ensure!(
        w.lhs == rat(1, 2) && w.rhs == rat(1, 10) + rat(1, 20) + rat(1, 10),
        "rectangular witness {} > {}",
        w.lhs,
        w.rhs
    );
    Ok(())
}

fn b_rectangular_spaces() -> Outcome {
    for (name, space) in [
        ("coefficient-three space", fixtures::ex2_space(&rat(1, 8))),
        ("worked example space", fixtures::main_space(&rat(1, 32))),
    ] {
        let r = check_b_rectangular(&space, &int(3), ScanOptions::default()).map_err(|e| e.to_string())?;
        ensure!(
            r.verdict,
            "{name}: {} violations, first {:?}",
            r.violations,
            r.witnesses.first()
        );
    }
    Ok(())
}

fn contraction_replication() -> Outcome {
    let inst = fixtures::main_instance(&rat(1, 32));
    let report = check_all(&inst).map_err(|e| e.to_string())?;
    ensure!(report.global_holds, "{} failing pairs", report.failures);
    ensure!(report.exact, "evaluation left exact arithmetic");

    // psi(9 d(Tx, Ty) + phi(Tx) + phi(Ty)) with psi = 3t/2
    let lhs_oracle = |d: Rational, wx: Rational, wy: Rational| rat(3, 2) * (int(9) * d + wx + wy);
    let both_in_b = lhs_oracle(int(0), rat(1, 16), rat(1, 16));
    let a_and_b = lhs_oracle(rat(1, 20), int(0), rat(1, 16));
    ensure!(both_in_b == rat(3, 16) && a_and_b == rat(123, 160), "oracle arithmetic");

    for (x, y, want) in [
        ("1/2", "1/2", &both_in_b),
        ("3/4", "1", &both_in_b),
        ("0", "1/2", &a_and_b),
        ("1/9", "7/8", &a_and_b),
    ] {
        let v = check_pair_by_label(&inst, x, y).map_err(|e| e.to_string())?;
        let got = exact(&v.lhs)?;
        ensure!(&got == want, "lhs({x}, {y}) = {got}, expected {want}");
    }

    // On [0, 1] the right side is 3m/2 - m/16 = 23m/16.
    let factor = rat(3, 2) - rat(1, 16);
    ensure!(factor == rat(23, 16), "oracle factor");
    for m in [int(1), rat(59, 100), rat(193, 256)] {
        let got = exact(&inst.rhs_at(&Value::Exact(m.clone())).map_err(|e| e.to_string())?)?;
        ensure!(got == &factor * &m, "rhs at {m} = {got}");
    }
    ensure!(
        &factor * rat(59, 100) == rat(1357, 1600) && &factor * rat(193, 256) == rat(4439, 4096),
        "oracle products"
    );

    let v = check_pair_by_label(&inst, "0", "1/2").map_err(|e| e.to_string())?;
    ensure!(exact(&v.m)? == rat(193, 256), "M(0, 1/2) = {}", v.m);
    ensure!(exact(&v.rhs)? == rat(4439, 4096), "rhs(0, 1/2) = {}", v.rhs);
    Ok(())
}

fn solver() -> Outcome {
    let inst = fixtures::main_instance(&rat(1, 32));
    let zero = Rational::zero();
    for p in inst.space.points() {
        let r = picard_iterate(&inst, &p.label, 10 * inst.space.len(), &zero).map_err(|e| e.to_string())?;
        ensure!(
            r.status == Status::FixedPoint && r.point.as_deref() == Some("0"),
            "start {}: {:?} {:?}",
            p.label,
            r.status,
            r.point
        );
        ensure!(
            verify_decreasing(&r.trace).holds,
            "start {}: augmented steps increase",
            p.label
        );
        ensure!(
            check_vanishing(&r.trace, &zero).all_vanish(),
            "start {}: sequences do not vanish",
            p.label
        );
    }
    let u = uniqueness_scan(&inst, &zero);
    ensure!(u.fixed_points == ["0"], "fixed points {:?}", u.fixed_points);
    let f = verify_fixed_point(&inst, "0", &zero).map_err(|e| e.to_string())?;
    ensure!(
        f.passes && f.weight.as_rational() == Some(&zero),
        "fixed point check {f:?}"
    );
    Ok(())
}

fn cclass_catalog() -> Outcome {
    let grid = grid_2d(&int(10), &rat(1, 8));
    let side = 81;
    for (i, f) in fixtures::cclass_catalog().iter().enumerate() {
        let n = i + 1;
        let r = verify_cclass(
            f,
            &grid,
            &default_cclass_tolerance(f),
            &Rational::zero(),
            ScanOptions::default(),
        )
        .map_err(|e| format!("entry {n}: {e}"))?;
        ensure!(
            r.verdict,
            "entry {n} ({f}): {} violations, first {:?}",
            r.violations,
            r.witnesses.first()
        );
        let locus = r.locus();
        match n {
            1 => ensure!(
                locus.len() == side && locus.iter().all(|(_, t)| t.is_zero()),
                "entry 1 locus {} points",
                locus.len()
            ),
            2 => ensure!(
                locus.len() == side && locus.iter().all(|(s, _)| s.is_zero()),
                "entry 2 locus {} points",
                locus.len()
            ),
            _ => {}
        }
    }
    Ok(())
}

fn monotone_tripled() -> Outcome {
    let grid = grid_1d(&int(0), &int(4), &rat(1, 16));
    let tol = ten_pow_neg(20);
    let ok = check_monotone_tripled(&fixtures::monotone_tripled(), &grid, &tol, ScanOptions::default())
        .map_err(|e| e.to_string())?;
    ensure!(ok.verdict, "monotone example fails at {:?}", ok.witnesses.first());
    let bad = check_monotone_tripled(
        &fixtures::non_monotone_tripled(),
        &grid,
        &tol,
        ScanOptions::all_witnesses(),
    )
    .map_err(|e| e.to_string())?;
    ensure!(!bad.verdict, "non-monotone example passes");
    let w = bad.witness(&[rat(1, 4), int(2)]).ok_or("witness (1/4, 2) missing")?;
    // G(1/4) = sqrt(1/4) - 1/16, G(2) = 4 - 4
    ensure!(
        w.values[0].as_rational() == Some(&rat(7, 16)) && w.values[1].is_zero(),
        "witness values {:?}",
        w.values
    );
    Ok(())
}

fn random_table_map(space: &GeneralizedMetricSpace, rng: &mut ChaCha8Rng) -> SelfMap {
    let labels: Vec<String> = space.points().iter().map(|p| p.label.clone()).collect();
    SelfMap::Table(
        labels
            .iter()
            .map(|l| (l.clone(), labels[rng.gen_range(0..labels.len())].clone()))
            .collect(),
    )
}

fn random_slope(rng: &mut ChaCha8Rng, max_num: i64) -> Rational {
    rat(rng.gen_range(0..=max_num), 8)
}

fn oracle_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let shrink = Rational::one() - rat(1, 1 << 20);
    let mut unique = 0;
    for trial in 0..100u64 {
        let n = rng.gen_range(5..=7);
        let space = generate_random_space(n, 1000 + trial, RandomProfile::Generic);
        let m = minimal_b_rect_s(&space).map_err(|e| e.to_string())?;
        ensure!(
            scan_axiom(&space, Axiom::BRectangular, &m.s, ScanOptions::default()).verdict,
            "trial {trial}: fails at its own minimal coefficient {}",
            m.s
        );
        // A maximizing path always appears together with its reverse.
        if m.argmax_count == 2 {
            unique += 1;
            let below = &m.s * &shrink;
            ensure!(
                !scan_axiom(&space, Axiom::BRectangular, &below, ScanOptions::default()).verdict,
                "trial {trial}: holds below s*"
            );
        }

        let w = [
            random_slope(&mut rng, 8),
            random_slope(&mut rng, 8),
            random_slope(&mut rng, 8),
        ];
        let (a, b, c) = if w.iter().all(Zero::is_zero) {
            (int(1), int(0), int(0))
        } else {
            (w[0].clone(), w[1].clone(), w[2].clone())
        };
        let inst = ContractionInstance::new(
            space.clone(),
            random_table_map(&space, &mut rng),
            InstanceSpec {
                psi: FunctionSpec::linear(int(1)),
                weight_phi: FunctionSpec::linear(random_slope(&mut rng, 16)),
                control_phi: FunctionSpec::linear(rat(1, 2)),
                f: FunctionSpec::cclass(1, &[]).map_err(|e| e.to_string())?,
                s: int(1),
                variant: Variant::MConvex {
                    a: a.clone(),
                    b: b.clone(),
                    c: c.clone(),
                },
            },
        )
        .map_err(|e| e.to_string())?;
        for x in 0..n {
            for y in 0..n {
                let conv = compute_m_convex(&inst, x, y, (&a, &b, &c)).map_err(|e| e.to_string())?;
                let max = compute_m_max(&inst, x, y);
                ensure!(
                    conv.cmp_value(&max).is_le(),
                    "trial {trial}: M_convex {conv} > M_max {max}"
                );
            }
        }

        let metric = generate_random_space(n, 5000 + trial, RandomProfile::Metric);
        ensure!(
            check_triangle(&metric, ScanOptions::default()).verdict,
            "trial {trial}: metric profile violates the triangle inequality"
        );
    }
    ensure!(unique > 0, "no trial had a unique maximizer");
    Ok(())
}

/// Margin recomputed directly from the distance table with `psi(t) = t`,
/// linear weight and control slopes and the `max` bound.
#[allow(clippy::too_many_arguments)]
fn margin_oracle(
    space: &GeneralizedMetricSpace,
    image: &[usize],
    w: &Rational,
    c: &Rational,
    s: &Rational,
    x: usize,
    y: usize,
    rhs: impl Fn(&Rational, &Rational) -> Rational,
) -> Rational {
    let d = |i: usize, j: usize| space.d(i, j).clone();
    let phi = |i: usize| w * &space.point(i).value;
    let aug = |i: usize, j: usize| d(i, j) + phi(i) + phi(j);
    let (tx, ty) = (image[x], image[y]);
    let lhs = s * s * d(tx, ty) + phi(tx) + phi(ty);
    let m = [aug(x, y), aug(x, tx), aug(y, ty)]
        .into_iter()
        .max()
        .expect("three terms");
    rhs(&m, &(c * &m)) - lhs
}

fn preset_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mdk = make_preset(Preset::MdkDiff).map_err(|e| e.to_string())?;
    let ratio = make_preset(Preset::Ratio).map_err(|e| e.to_string())?;
    for trial in 0..25u64 {
        let n = rng.gen_range(4..=7);
        let space = generate_random_space(n, 9000 + trial, RandomProfile::Generic);
        let map = random_table_map(&space, &mut rng);
        let (w, c) = (random_slope(&mut rng, 8), rat(rng.gen_range(1..=7), 8));
        let s = int(rng.gen_range(1..=3));
        let weight = FunctionSpec::linear(w.clone());
        let control = FunctionSpec::linear(c.clone());
        let err = |e: fprect::contraction::ContractionError| e.to_string();

        let general = ContractionInstance::new(
            space.clone(),
            map.clone(),
            InstanceSpec {
                psi: FunctionSpec::linear(int(1)),
                weight_phi: weight.clone(),
                control_phi: control.clone(),
                f: FunctionSpec::cclass(1, &[]).map_err(|e| e.to_string())?,
                s: s.clone(),
                variant: Variant::MMax,
            },
        )
        .map_err(err)?;
        let image: Vec<usize> = (0..n).map(|i| general.image(i)).collect();
        let preset_mdk = mdk
            .instantiate(space.clone(), map.clone(), weight.clone(), control.clone(), s.clone())
            .map_err(err)?;
        let preset_ratio = ratio
            .instantiate(space.clone(), map, weight, control, s.clone())
            .map_err(err)?;

        let (rg, rm, rr) = (
            check_all(&general).map_err(err)?,
            check_all(&preset_mdk).map_err(err)?,
            check_all(&preset_ratio).map_err(err)?,
        );
        ensure!(
            rg.global_holds == rm.global_holds,
            "trial {trial}: global verdicts differ"
        );
        for ((g, m), r) in rg.verdicts.iter().zip(&rm.verdicts).zip(&rr.verdicts) {
            let (x, y) = (general.index(&g.x).map_err(err)?, general.index(&g.y).map_err(err)?);
            let diff = margin_oracle(&space, &image, &w, &c, &s, x, y, |p, q| p - q);
            let quot = margin_oracle(&space, &image, &w, &c, &s, x, y, |p, q| p / (Rational::one() + q));
            ensure!(
                g.holds == m.holds && exact(&g.margin)? == exact(&m.margin)?,
                "trial {trial} ({}, {}): preset differs from general",
                g.x,
                g.y
            );
            ensure!(
                exact(&m.margin)? == diff,
                "trial {trial} ({}, {}): margin {} vs oracle {diff}",
                g.x,
                g.y,
                m.margin
            );
            ensure!(
                exact(&r.margin)? == quot,
                "trial {trial} ({}, {}): ratio margin {} vs oracle {quot}",
                g.x,
                g.y,
                r.margin
            );
            ensure!(r.holds == (quot >= Rational::zero()), "trial {trial}: ratio verdict");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("space separations", space_separations, Duration::from_secs(1)),
        (
            "b-rectangular verification",
            b_rectangular_spaces,
            Duration::from_secs(10),
        ),
        (
            "contraction replication",
            contraction_replication,
            Duration::from_secs(60),
        ),
        ("solver", solver, Duration::from_secs(1)),
        ("C-class catalog", cclass_catalog, Duration::from_secs(30)),
        ("monotone tripled", monotone_tripled, Duration::from_secs(60)),
        ("oracle properties", oracle_properties, Duration::from_secs(60)),
        ("preset equivalence", preset_equivalence, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = result.and_then(|()| {
            if took <= budget {
                Ok(())
            } else {
                Err(format!("took {took:.2?}, budget {budget:?}"))
            }
        });
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
