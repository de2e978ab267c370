//! One PASS/FAIL line per acceptance criterion.

use std::time::Instant;

use halfspace_median::breakdown::{
    build_attack, default_scales, exact_breakdown, lower_bound, project_dataset, projection_frame, upper_bound,
    DirectionSearchConfig,
};
use halfspace_median::depth::DepthValue;
use halfspace_median::distributions::{
    depth_continuity_probe, empirical_symmetry, norms, sample, smoothness_probe, DistributionSpec, Verdict,
};
use halfspace_median::experiments::{
    gap_trend_holds, run_attack_demo, run_convergence, run_region_oracle, sub_seed, ExperimentConfig, OracleConfig,
};
use halfspace_median::geometry::{int, ratio, DataSet, Direction, Point};
use halfspace_median::regions::{enumerate_irrotatable, median_region};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: halfspace_median::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ds_a() -> DataSet {
    DataSet::from_ints(&[&[0, 0], &[2, 0], &[1, 1], &[1, 1]]).unwrap()
}

fn ds_b() -> DataSet {
    DataSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
}

fn degenerate_instance(d: usize) -> DistributionSpec {
    let base = DistributionSpec::uniform_ball(d, 1.0).unwrap().with_precision(10);
    DistributionSpec::degenerate(base, 0.3, 0.2).unwrap()
}

fn c1_degenerate_example() -> Outcome {
    let ds = ds_a();
    let m = lib(median_region(&ds))?;
    ensure(m.lambda_star == DepthValue::new(2, 4), format!("lambda* = {}", m.lambda_star))?;
    ensure(m.region.vertices == vec![Point::from_ints(&[1, 1])], "median region is not {(1,1)}")?;
    ensure(m.median == Point::from_ints(&[1, 1]), "median is not (1,1)")?;
    let certs = lib(enumerate_irrotatable(&ds, DepthValue::new(1, 2)))?;
    ensure(certs.len() == 4, format!("{} certificates", certs.len()))?;
    let odd = certs.iter().filter(|c| c.boundary_points.len() == 3 && c.cut_count == 0).count();
    // The reflection x -> 2 - x fixes DS-A and pairs the certificates.
    ensure(odd == 2, format!("{odd} certificates with 3 boundary points and no cut"))?;
    ensure(certs.iter().all(|c| c.boundary_points.len() == 3 && c.cut_count <= 1), "certificate shape")?;
    Ok("median {(1,1)}, lambda* 1/2, 4 certificates, a mirrored pair with 3 boundary points and cut 0".into())
}

fn c2_oracle() -> Outcome {
    let plane = lib(run_region_oracle(&OracleConfig::new(degenerate_instance(2), 200, 12, 2)))?;
    let space = lib(run_region_oracle(&OracleConfig::new(degenerate_instance(3), 50, 8, 3)))?;
    let bad = plane.mismatches.len() + space.mismatches.len();
    ensure(plane.instances == 200 && space.instances == 50, "instance count")?;
    ensure(bad == 0, format!("{bad} mismatches, first {:?}", plane.mismatches.first().or(space.mismatches.first())))?;
    Ok(format!(
        "{} + {} instances, {} levels, {} probes, 0 mismatches",
        plane.instances,
        space.instances,
        plane.levels + space.levels,
        plane.probes + space.probes
    ))
}

fn c3_general_position() -> Outcome {
    let mut cfg = OracleConfig::new(DistributionSpec::uniform_ball(2, 1.0).unwrap().with_precision(20), 50, 12, 4);
    cfg.general_position = true;
    let s = lib(run_region_oracle(&cfg))?;
    ensure(s.instances == 50, "instance count")?;
    ensure(s.certificates > 0, "no certificates")?;
    ensure(s.certificate_exceptions == 0, format!("{} exceptions", s.certificate_exceptions))?;
    ensure(s.mismatches.is_empty(), "membership mismatches")?;
    Ok(format!("{} certificates, 0 exceptions", s.certificates))
}

fn c4_sandwich() -> Outcome {
    let third = ratio(1, 3);
    for (name, ds) in [("DS-A", ds_a()), ("DS-B", ds_b())] {
        let lo = lib(lower_bound(&ds))?;
        let up = lib(upper_bound(&ds, &DirectionSearchConfig::default()))?;
        ensure(lo == third && up.ratio == third, format!("{name}: {lo} / {}", up.ratio))?;
        let r = lib(exact_breakdown(&ds, ds.len(), &default_scales()))?;
        ensure(r.exact_m == Some(2), format!("{name}: exact m {:?}", r.exact_m))?;
        ensure(r.ratio() == Some(third.clone()), format!("{name}: ratio"))?;
    }
    let mut pinched = 0;
    for i in 0..30u64 {
        let n = 4 + (i % 5) as usize;
        let spec = DistributionSpec::uniform_ball(2, 1.0).unwrap().with_precision(6);
        let ds = lib(sample(&spec, n, sub_seed(5, i)))?;
        let r = lib(exact_breakdown(&ds, ds.len(), &default_scales()))?;
        let eps = r.ratio().ok_or(format!("instance {i}: no escaping m up to n"))?;
        ensure(r.lower <= eps && eps <= r.upper, format!("instance {i}: {} <= {eps} <= {}", r.lower, r.upper))?;
        if r.lower == r.upper {
            pinched += 1;
        }
    }
    Ok(format!("DS-A and DS-B pinched at 1/3 with m = 2; 30 random sandwiched, {pinched} pinched"))
}

fn c5_attacks() -> Outcome {
    let mut sets = vec![ds_a(), ds_b()];
    for i in 0..4u64 {
        let spec = DistributionSpec::uniform_ball(2, 1.0).unwrap().with_precision(12);
        sets.push(lib(sample(&spec, 20 + 10 * i as usize, sub_seed(6, i)))?);
    }
    for i in 0..2u64 {
        let spec = DistributionSpec::uniform_ball(3, 1.0).unwrap().with_precision(10);
        sets.push(lib(sample(&spec, 8, sub_seed(7, i)))?);
    }
    for (k, ds) in sets.iter().enumerate() {
        let demo = lib(run_attack_demo(ds, &DirectionSearchConfig::default(), &int(1000)))?;
        let expect_m = demo.plan.lambda_u.count as usize;
        ensure(demo.plan.m == expect_m, format!("set {k}: m {} vs {expect_m}", demo.plan.m))?;
        ensure(demo.sound(), format!("set {k}: attack unsound, distances {:?}", demo.check.distances))?;
        ensure(!demo.weak_escaped(), format!("set {k}: m = {} escaped", demo.weak_m))?;
    }
    // Every direction's plan, not only the minimizing one, on DS-A.
    for u in [[1, 0], [-1, 0], [0, 1], [1, 1]] {
        let ds = ds_a();
        let plan = lib(build_attack(&ds, &Direction::from_ints(&u).unwrap(), &int(1000)))?;
        let check = lib(halfspace_median::breakdown::verify_attack(&ds, &plan))?;
        let bound = DepthValue::new(plan.lambda_u.count, (ds.len() + plan.m) as u64);
        ensure(check.sup_depth_inside <= bound, format!("DS-A u {u:?}: sup depth {}", check.sup_depth_inside))?;
        ensure(check.escaped, format!("DS-A u {u:?}: no escape"))?;
    }
    Ok(format!("{} minimizing plans sound, m - 1 stays bounded; 4 DS-A directions sound", sets.len()))
}

fn c6_convergence() -> Outcome {
    let schedule = vec![50, 200, 800, 1600];
    let mut notes = Vec::new();
    for (name, spec) in [
        ("ball", DistributionSpec::uniform_ball(2, 1.0).unwrap()),
        ("mixture", DistributionSpec::ball_sphere_mixture(2).unwrap()),
    ] {
        let cfg = ExperimentConfig::new(name, spec.with_precision(24), schedule.clone(), 20, 11);
        let out = lib(run_convergence(&cfg))?;
        ensure(!out.budget_exceeded(), format!("{name}: budget exceeded"))?;
        let last = out.aggregates.last().ok_or("no aggregates")?;
        let third = 1.0 / 3.0;
        ensure(
            (last.median_lower - third).abs() <= 0.05 && (last.median_upper - third).abs() <= 0.05,
            format!("{name}: n = 1600 bounds {:.4} {:.4}", last.median_lower, last.median_upper),
        )?;
        let gaps: Vec<String> = out.aggregates.iter().map(|a| format!("{:.4}", a.gap)).collect();
        ensure(gap_trend_holds(&out.aggregates, 1), format!("{name}: gaps {gaps:?}"))?;
        notes.push(format!("{name} gaps {}", gaps.join(" ")));
    }
    Ok(notes.join("; "))
}

fn c7_probes() -> Outcome {
    let mixture = DistributionSpec::ball_sphere_mixture(2).unwrap();
    let ds = lib(sample(&mixture, 10_000, 8))?;
    let shell = norms(&ds).iter().filter(|r| (**r - 2.0).abs() < 1e-6).count() as f64 / 1e4;
    ensure((shell - 0.5).abs() <= 0.02, format!("mass at norm 2: {shell}"))?;
    for x0 in [[0.0, 0.0], [0.5, 0.5], [1.0, 0.0], [2.0, 0.0], [0.0, -1.5]] {
        let r = lib(smoothness_probe(&mixture, &x0, &[1e-1, 1e-2, 1e-3], 360, 100_000, 9))?;
        ensure(r.verdict == Verdict::Smooth, format!("mixture at {x0:?}: {r}"))?;
    }
    let atom = DistributionSpec::atom_on_hyperplane(0.4, DistributionSpec::uniform_ball(2, 1.0).unwrap()).unwrap();
    let r = lib(smoothness_probe(&atom, &[0.0, 0.0], &[1e-1, 1e-2, 1e-3], 360, 100_000, 10))?;
    ensure(r.verdict == Verdict::NonSmooth, format!("atom: {r}"))?;
    let c = lib(depth_continuity_probe(&atom, &[0.0, 0.0], &[1.0, 0.0], &[1e-1, 1e-2, 1e-3], 100_000, 11))?;
    ensure(c.verdict == Verdict::Discontinuous, format!("atom continuity: {c}"))?;
    let center = c.details.iter().find(|(k, _)| k == "center").map(|(_, v)| *v).ok_or("no center")?;
    let sides: Vec<f64> = c.details.iter().filter(|(k, _)| k != "center").map(|(_, v)| *v).collect();
    ensure(center >= 0.47, format!("center {center}"))?;
    ensure(!sides.is_empty() && sides.iter().all(|s| *s <= 0.33), format!("sides {sides:?}"))?;
    Ok(format!(
        "shell mass {shell:.4}, mixture SMOOTH at 5 points, atom NON-SMOOTH, center {center:.4}, sides <= {:.4}",
        sides.iter().cloned().fold(f64::MIN, f64::max)
    ))
}

fn c8_projection_symmetry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checks = 0;
    for i in 0..20u64 {
        let d = 2 + (i % 2) as usize;
        let spec = DistributionSpec::uniform_ball(d, 1.0).unwrap().with_precision(8);
        let half = lib(sample(&spec, 5 + (i % 7) as usize, sub_seed(13, i)))?;
        let center: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        let center = Point::from_ints(&center);
        let ds = lib(half.symmetrized(&center))?;
        for _ in 0..50 {
            let u: Vec<i64> = loop {
                let u: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
                if u.iter().any(|c| *c != 0) {
                    break u;
                }
            };
            let frame = lib(projection_frame(&Direction::from_ints(&u).unwrap()))?;
            let proj = lib(project_dataset(&ds, &frame))?;
            let (_, depth) = lib(empirical_symmetry(&proj, &frame.project(&center)))?;
            ensure(
                2 * depth.count as usize >= ds.len(),
                format!("dataset {i}, u {u:?}: depth {depth}"),
            )?;
            checks += 1;
        }
    }
    Ok(format!("{checks} projected halfspace checks, 0 violations"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("degenerate example", c1_degenerate_example),
        ("region oracle", c2_oracle),
        ("general position", c3_general_position),
        ("bound sandwich", c4_sandwich),
        ("attack soundness", c5_attacks),
        ("convergence", c6_convergence),
        ("distribution probes", c7_probes),
        ("projection symmetry", c8_projection_symmetry),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("criterion {} {name}: PASS ({secs:.1}s) {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s) {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
