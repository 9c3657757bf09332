//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ising_zonoids::ground_state::{
    box_connected_in_lattice, brute_force_transition_energy, interaction_components,
    min_transition_energy, surface_tension_sweep, zero_energy_witness, PeriodicCoefficients,
    TransitionProblem,
};
use ising_zonoids::ising::Spin;
use ising_zonoids::num::{rat, Rational};
use ising_zonoids::wulff_discrete::{wulff_convergence_diagnostic, DiagnosticOptions};
use ising_zonoids::zonoid::{
    approximate_zonoid, directed_wulff, perimeter_energy_polygon, support_function, ApproxOptions,
    ZonoidTarget,
};
use ising_zonoids::{
    presets, DirectedIsingSystem, IsingSystem, LatticeVector, Zonotope, DEFAULT_SEED,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_system(rng: &mut ChaCha8Rng, dim: usize, reach: i64, max_terms: usize) -> IsingSystem {
    let mut pairs = Vec::new();
    while pairs.is_empty() {
        for _ in 0..rng.random_range(1..=max_terms) {
            let k =
                LatticeVector::new((0..dim).map(|_| rng.random_range(-reach..=reach)).collect());
            if !k.is_zero() {
                pairs.push((k, rat(rng.random_range(1..=6), rng.random_range(1..=4))));
            }
        }
    }
    IsingSystem::from_pairs(dim, pairs).unwrap()
}

fn random_rational_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim)
        .map(|_| rat(rng.random_range(-30..=30), rng.random_range(1..=12)))
        .collect()
}

fn commuting_square() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut checked = 0;
    for i in 0..20 {
        let dim = 2 + i % 2;
        let system = random_system(&mut rng, dim, 3, 5);
        let zonotope = system
            .generating_measure()
            .exact_zonotope()
            .map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let z = random_rational_vector(&mut rng, dim);
            let direct = system
                .surface_tension_exact(&z)
                .map_err(|e| e.to_string())?;
            if direct != support_function(&zonotope, &z) {
                return Err(format!("mismatch for system {i} at {z:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} exact evaluations agree"))
}

fn tension_convergence() -> Outcome {
    let nn = presets::nearest_neighbour(2);
    let mut detail = Vec::new();
    let mut ok = true;
    for nu in [[0.0, 1.0], [1.0, 2.0]] {
        let row = &surface_tension_sweep(&nn, &nu, &[40]).map_err(|e| e.to_string())?[0];
        let err = row.relative_error.expect("closed form");
        ok &= err <= 0.05;
        detail.push(format!(
            "nu={nu:?} m_T/T={:.4} err={:.4}",
            row.normalized, err
        ));
        for t in 1..=4 {
            let p = TransitionProblem {
                coefficients: &nn,
                nu: nu.to_vec(),
                size: t,
            };
            let cut = min_transition_energy(&p).map_err(|e| e.to_string())?.energy;
            let brute = brute_force_transition_energy(&p).map_err(|e| e.to_string())?;
            if cut != brute {
                return Err(format!(
                    "T={t} nu={nu:?}: min-cut {cut} vs exhaustive {brute}"
                ));
            }
        }
    }
    detail.push("min-cut equals exhaustive search for T <= 4".into());
    check(ok, detail.join("; "))
}

fn equivalent_limits() -> Outcome {
    let nn = presets::nearest_neighbour(2);
    let r2 = presets::range_two(2);
    if !nn.equivalent(&r2) {
        return Err("not equivalent".into());
    }
    if nn.is_coercive() == r2.is_coercive() || r2.is_coercive() {
        return Err("coercivity should differ".into());
    }
    let mut detail = Vec::new();
    for nu in [[0.0, 1.0], [1.0, 2.0]] {
        for (name, s) in [("nn", &nn), ("range-2", &r2)] {
            let row = &surface_tension_sweep(s, &nu, &[40]).map_err(|e| e.to_string())?[0];
            let err = row.relative_error.expect("closed form");
            if err > 0.05 {
                return Err(format!(
                    "{name} at nu={nu:?}: m_T/T = {} (err {err:.4})",
                    row.normalized
                ));
            }
            detail.push(format!("{name} nu={nu:?} err={err:.4}"));
        }
    }
    let w = zero_energy_witness(&r2, 6)
        .map_err(|e| e.to_string())?
        .ok_or("no witness")?;
    let energy = r2.energy(&w).map_err(|e| e.to_string())?;
    let checkerboard = w
        .sites()
        .all(|(s, spin)| spin == Spin::from_sign(s.l1_norm() % 2 == 0));
    detail.push(format!("checkerboard witness energy {energy}"));
    check(energy.is_zero() && checkerboard, detail.join("; "))
}

fn coercivity_oracle() -> Outcome {
    let mut classes: Vec<LatticeVector> = Vec::new();
    for x in -2..=2i64 {
        for y in -2..=2i64 {
            let k = LatticeVector::from([x, y]);
            if !k.is_zero() && k.is_canonical_sign() {
                classes.push(k);
            }
        }
    }
    let n = classes.len();
    let mut total = 0;
    let mut agree = 0;
    let mut literal_agree = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() > 3 {
            continue;
        }
        let pairs = (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (classes[b].clone(), rat(1, 1)));
        let system = IsingSystem::from_pairs(2, pairs).unwrap();
        total += 1;
        // Paths of the lattice graph may leave the radius-6 box.
        let oracle = box_connected_in_lattice(&system, 6, 6);
        if oracle == system.is_coercive() {
            agree += 1;
        }
        let (_, _, components) = interaction_components(&system, 6);
        if (components == 1) == system.is_coercive() {
            literal_agree += 1;
        }
        if !system.is_coercive() {
            let w = zero_energy_witness(&system, 6)
                .map_err(|e| e.to_string())?
                .ok_or("missing witness")?;
            if !system.energy(&w).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("nonzero witness energy for mask {mask:b}"));
            }
        }
    }
    check(
        agree == total,
        format!(
            "{agree}/{total} systems over {n} offset classes; box-only graph agrees on {literal_agree}/{total} \
             (isolated box corners)"
        ),
    )
}

fn zonotope_volume() -> Outcome {
    let exact = Zonotope::new(
        2,
        vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(1, 1), rat(1, 1)],
        ],
    )
    .map_err(|e| e.to_string())?;
    let volume = exact.volume();
    let z = exact.to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let samples = 1_000_000;
    let hits = (0..samples)
        .filter(|_| z.contains(&[rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]))
        .count();
    let estimate = 16.0 * hits as f64 / samples as f64;
    let rel = (estimate - 12.0).abs() / 12.0;
    check(
        volume == rat(12, 1) && rel <= 0.01,
        format!("volume {volume}, Monte-Carlo {estimate:.4} (rel {rel:.5})"),
    )
}

fn wulff_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut worst = 0.0f64;
    for i in 0..10 {
        let m = rng.random_range(2..=6);
        let gens: Vec<Vec<Rational>> = (0..m)
            .map(|_| random_rational_vector(&mut rng, 2))
            .collect();
        let z = Zonotope::new(2, gens).map_err(|e| e.to_string())?;
        let Ok(w) = z.polygon_2d() else { continue };
        let energy = perimeter_energy_polygon(|x: &[Rational]| support_function(&z, x), &w);
        let twice = w.area() * rat(2, 1);
        if energy != twice {
            return Err(format!("zonogon {i}: {energy} vs {twice}"));
        }
        let wf = w.to_f64();
        let zf = z.to_f64();
        let ef = perimeter_energy_polygon(|x: &[f64]| zf.support(x), &wf);
        worst = worst.max((ef - 2.0 * wf.area()).abs() / (2.0 * wf.area()));
    }
    check(
        worst <= 1e-9,
        format!("exact equality; floating relative gap {worst:.2e}"),
    )
}

fn zonoid_approximation() -> Outcome {
    let disk = ZonoidTarget::unit_disk();
    let at = |bound| {
        approximate_zonoid(
            &disk,
            &ApproxOptions {
                denominator_bound: bound,
                ..ApproxOptions::default()
            },
        )
        .map(|r| r.sup_error)
        .map_err(|e| e.to_string())
    };
    let (e10, e20) = (at(10)?, at(20)?);
    check(
        e10 <= 0.02 && e20 < e10,
        format!("sup-error {e10:.5} at bound 10, {e20:.5} at bound 20"),
    )
}

fn discrete_wulff() -> Outcome {
    let eps = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 24.0];
    let report = wulff_convergence_diagnostic(
        &presets::nearest_neighbour(2),
        &eps,
        &DiagnosticOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let ratio = report.rows.last().unwrap().energy_ratio;
    let sym: Vec<f64> = report.rows.iter().map(|r| r.symdiff_fraction).collect();
    let decreasing = sym.windows(2).all(|w| w[1] < w[0]);
    check(
        (ratio - 1.0).abs() <= 0.1 && decreasing,
        format!(
            "ratio {ratio:.5} at eps=1/24; symdiff {:.5} {:.5} {:.5}",
            sym[0], sym[1], sym[2]
        ),
    )
}

fn directed_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for i in 0..10 {
        let sym = random_system(&mut rng, 2, 3, 4);
        let dir = DirectedIsingSystem::from_undirected(&sym);
        for _ in 0..20 {
            let z = random_rational_vector(&mut rng, 2);
            let (a, b) = (
                sym.surface_tension_exact(&z).unwrap(),
                dir.directed_surface_tension_exact(&z).unwrap(),
            );
            if a != b {
                return Err(format!("system {i}: tension {a} vs directed {b}"));
            }
        }
        let (dz, shift) = directed_wulff(&dir).map_err(|e| e.to_string())?;
        let uz = sym
            .generating_measure()
            .exact_zonotope()
            .map_err(|e| e.to_string())?;
        if !shift.iter().all(Zero::is_zero) {
            return Err(format!("system {i}: nonzero translation"));
        }
        match (dz.polygon_2d(), uz.polygon_2d()) {
            (Ok(p), Ok(q)) if p.same_cycle(&q) => {}
            (Err(_), Err(_)) => {}
            _ => return Err(format!("system {i}: Wulff polygons differ")),
        }
        let nu = vec![rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)];
        let mu = |c: &dyn ising_zonoids::ground_state::PairInteractions| {
            min_transition_energy(&TransitionProblem {
                coefficients: c,
                nu: nu.clone(),
                size: 6,
            })
            .map(|s| s.energy)
        };
        if mu(&sym).map_err(|e| e.to_string())? != mu(&dir).map_err(|e| e.to_string())? {
            return Err(format!("system {i}: min-cut energies differ"));
        }
    }
    let single = DirectedIsingSystem::new(
        2,
        BTreeMap::from([(LatticeVector::from([1, 0]), rat(1, 1))]),
    )
    .unwrap();
    let (z, t) = directed_wulff(&single).map_err(|e| e.to_string())?;
    let ok = z.generators() == [vec![rat(2, 1), rat(0, 1)]] && t == vec![rat(2, 1), rat(0, 1)];
    check(
        ok,
        "10 systems coincide; single bond gives segment [0,(4,0)] with translation (2,0)".into(),
    )
}

fn periodic_sanity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for i in 0..5 {
        let sys = random_system(&mut rng, 2, 2, 4);
        let periodic = PeriodicCoefficients::from_homogeneous(&sys);
        let nu = vec![rng.random_range(-2.0..2.0), rng.random_range(0.1..2.0)];
        for t in [4, 8] {
            let a = min_transition_energy(&TransitionProblem {
                coefficients: &sys,
                nu: nu.clone(),
                size: t,
            });
            let b = min_transition_energy(&TransitionProblem {
                coefficients: &periodic,
                nu: nu.clone(),
                size: t,
            });
            let (a, b) = (
                a.map_err(|e| e.to_string())?.energy,
                b.map_err(|e| e.to_string())?.energy,
            );
            if a != b {
                return Err(format!("system {i}, T={t}: {a} vs {b}"));
            }
        }
    }
    Ok("5 systems at T in {4, 8} match exactly".into())
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("commuting square", 5, commuting_square),
        ("surface-tension convergence", 60, tension_convergence),
        ("equivalent systems, equal limits", 60, equivalent_limits),
        ("coercivity classifier vs oracle", 30, coercivity_oracle),
        ("zonotope volume", 10, zonotope_volume),
        ("Wulff identity", 5, wulff_identity),
        ("zonoid approximation", 10, zonoid_approximation),
        ("discrete Wulff diagnostic", 300, discrete_wulff),
        ("directed reduction", 5, directed_reduction),
        ("periodic sanity", 30, periodic_sanity),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {status} {name}: {detail} [{:.2} s]",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
