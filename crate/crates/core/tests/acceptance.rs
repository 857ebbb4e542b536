//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

mod common;

use std::time::Instant;

use common::{p, partitions_up_to};
use num_traits::{ToPrimitive, Zero};
use sqdist::charpoly::RootSign;
use sqdist::extremal::check_step_monotonicity;
use sqdist::oracle::{oracle_inertia, symmetric_eigenvalues, DEFAULT_JACOBI_TOL};
use sqdist::{
    char_poly_factored, det_delta_exact, energy, enumerate_with_singletons, full_spectrum, inertia,
    lambda_s1_sign, multipartite_graph, radius_bipartite_closed, scan_energy, scan_energy_h,
    scan_radius, spectral_radius, split_h, sqdist_from_graph, turan_h, validate_chain, Partition,
    SecularForm,
};

const EIG_TOL: f64 = 1e-9;
const ENERGY_TOL: f64 = 1e-7;
const ZERO_THRESHOLD: f64 = 1e-7;
const RADIUS_TOL: f64 = 1e-10;
const DET_REL_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_eigenvalues(q: &Partition) -> Vec<f64> {
    let m = sqdist_from_graph(&multipartite_graph(q)).unwrap();
    symmetric_eigenvalues(&m, DEFAULT_JACOBI_TOL)
        .unwrap()
        .eigenvalues
}

/// An `s`-tuple padded with `h` singleton parts.
fn with_ones(big: &[usize], h: usize) -> Partition {
    let mut parts = big.to_vec();
    parts.extend(std::iter::repeat_n(1, h));
    Partition::new(&parts).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let all = partitions_up_to(14);
    let mut worst = 0.0f64;
    for q in &all {
        let closed = full_spectrum(q).unwrap().eigenvalues_desc();
        let oracle = oracle_eigenvalues(q);
        ensure(closed.len() == oracle.len(), || {
            format!("{q}: length mismatch")
        })?;
        for (a, b) in closed.iter().zip(&oracle) {
            worst = worst.max((a - b).abs());
        }
        ensure(worst <= EIG_TOL, || format!("{q}: deviation {worst:e}"))?;
    }
    Ok(format!(
        "{} partitions, worst deviation {worst:.2e}, {:.1?} single-threaded",
        all.len(),
        start.elapsed()
    ))
}

fn chain_31_15_7() -> Vec<Partition> {
    [
        [10, 2, 2, 2, 2, 2, 2, 2],
        [9, 3, 2, 2, 2, 2, 2, 2],
        [8, 4, 2, 2, 2, 2, 2, 2],
        [7, 4, 3, 2, 2, 2, 2, 2],
        [6, 4, 4, 2, 2, 2, 2, 2],
        [5, 4, 4, 3, 2, 2, 2, 2],
        [4, 4, 4, 4, 2, 2, 2, 2],
        [4, 4, 4, 3, 3, 2, 2, 2],
        [4, 4, 3, 3, 3, 3, 2, 2],
        [4, 3, 3, 3, 3, 3, 3, 2],
        [3, 3, 3, 3, 3, 3, 3, 3],
    ]
    .iter()
    .map(|big| with_ones(big, 7))
    .collect()
}

fn chain_30_15_7() -> Vec<Partition> {
    [
        [9, 2, 2, 2, 2, 2, 2, 2],
        [8, 3, 2, 2, 2, 2, 2, 2],
        [7, 4, 2, 2, 2, 2, 2, 2],
        [6, 4, 3, 2, 2, 2, 2, 2],
        [5, 4, 4, 2, 2, 2, 2, 2],
        [4, 4, 4, 3, 2, 2, 2, 2],
        [4, 4, 3, 3, 3, 2, 2, 2],
        [4, 3, 3, 3, 3, 3, 2, 2],
        [3, 3, 3, 3, 3, 3, 3, 2],
    ]
    .iter()
    .map(|big| with_ones(big, 7))
    .collect()
}

fn signs(chain: &[Partition]) -> Vec<RootSign> {
    chain.iter().map(|q| lambda_s1_sign(q).unwrap()).collect()
}

fn exact_energy(q: &Partition, want: i64) -> Result<(), String> {
    let e = energy(q).unwrap();
    ensure(e.is_integral() && e.integer_part == want.into(), || {
        format!(
            "E({q}) = {} (integral: {}), expected {want}",
            e.value,
            e.is_integral()
        )
    })
}

fn m_31_15_7() -> Outcome {
    let chain = chain_31_15_7();
    validate_chain(&chain).map_err(|e| e.to_string())?;
    ensure(chain[0] == split_h(31, 15, 7).unwrap(), || {
        "G0 is not S".into()
    })?;
    ensure(chain[10] == turan_h(31, 15, 7).unwrap(), || {
        "G10 is not T".into()
    })?;
    let s = signs(&chain);
    ensure(s[..6].iter().all(|&x| x == RootSign::Negative), || {
        format!("{s:?}")
    })?;
    ensure(s[6] == RootSign::Zero, || format!("G6 sign {:?}", s[6]))?;
    ensure(s[7..].iter().all(|&x| x == RootSign::Positive), || {
        format!("{s:?}")
    })?;
    for g in &chain[7..] {
        exact_energy(g, 140)?;
    }
    let top = energy(&chain[0]).unwrap();
    ensure(top.bounds().0 > 140.0, || format!("E(G0) = {}", top.value))?;
    let scan = scan_energy_h(31, 15, 7).map_err(|e| e.to_string())?;
    ensure(scan.passed(), || scan.violations.join("; "))?;
    ensure(scan.energy_max == [chain[0].clone()], || {
        "maximum not unique at S".into()
    })?;
    ensure(!scan.energy_min_unique(), || {
        "minimum unexpectedly unique".into()
    })?;
    Ok(format!(
        "G7..G10 energy 140, E(S) = {:.6}, {} members scanned",
        top.value,
        scan.entries.len()
    ))
}

fn m_30_15_7() -> Outcome {
    let chain = chain_30_15_7();
    validate_chain(&chain).map_err(|e| e.to_string())?;
    ensure(chain[0] == split_h(30, 15, 7).unwrap(), || {
        "G0 is not S".into()
    })?;
    ensure(chain[8] == turan_h(30, 15, 7).unwrap(), || {
        "G8 is not T".into()
    })?;
    let s = signs(&chain);
    ensure(s[..6].iter().all(|&x| x == RootSign::Negative), || {
        format!("{s:?}")
    })?;
    ensure(s[6..].iter().all(|&x| x == RootSign::Positive), || {
        format!("{s:?}")
    })?;
    for g in &chain[6..] {
        exact_energy(g, 132)?;
    }
    let scan = scan_energy_h(30, 15, 7).map_err(|e| e.to_string())?;
    ensure(scan.passed(), || scan.violations.join("; "))?;
    ensure(!scan.energy_min_unique(), || {
        "minimum unexpectedly unique".into()
    })?;
    ensure(scan.energy_max == [chain[0].clone()], || {
        "maximum not unique at S".into()
    })?;
    Ok(format!(
        "G6..G8 energy 132, {} minimizers, unique maximizer",
        scan.energy_min.len()
    ))
}

fn m_17_10_6() -> Outcome {
    let members = enumerate_with_singletons(17, 10, 6).map_err(|e| e.to_string())?;
    ensure(!members.is_empty(), || "empty class".into())?;
    for q in &members {
        exact_energy(q, 66)?;
    }
    ensure(
        lambda_s1_sign(&split_h(17, 10, 6).unwrap()).unwrap() == RootSign::Positive,
        || "sign at S not positive".into(),
    )?;
    Ok(format!("{} members, all energy 66", members.len()))
}

fn no_singletons() -> Outcome {
    let mut count = 0;
    for q in partitions_up_to(14).into_iter().filter(|q| q.h() == 0) {
        let (n, t) = (q.n(), q.t());
        ensure(inertia(&q).counts() == (t, 0, n - t), || {
            format!("{q}: inertia")
        })?;
        exact_energy(&q, 8 * (n - t) as i64)?;
        let summed: f64 = oracle_eigenvalues(&q).iter().map(|v| v.abs()).sum();
        let dev = (summed - 8.0 * (n - t) as f64).abs();
        ensure(dev <= ENERGY_TOL, || {
            format!("{q}: oracle energy off by {dev:e}")
        })?;
        count += 1;
    }
    Ok(format!("{count} partitions"))
}

fn singleton_inertia() -> Outcome {
    let mut zero_cases = 0;
    let mut count = 0;
    for q in partitions_up_to(14).into_iter().filter(|q| q.h() >= 1) {
        let exact = inertia(&q).counts();
        let oracle = oracle_inertia(&oracle_eigenvalues(&q));
        ensure(exact == oracle, || {
            format!("{q}: exact {exact:?} vs oracle {oracle:?}")
        })?;
        ensure(ZERO_THRESHOLD == sqdist::oracle::ZERO_THRESHOLD, || {
            "threshold drift".into()
        })?;
        zero_cases += usize::from(exact.1 == 1);
        count += 1;
    }
    let small = inertia(&p("2,1,1")).counts();
    ensure(small == (1, 1, 2), || format!("(2,1,1) gives {small:?}"))?;
    ensure(zero_cases > 0, || "zero case never hit".into())?;
    Ok(format!(
        "{count} partitions, {zero_cases} with a zero eigenvalue"
    ))
}

fn energy_bounds() -> Outcome {
    let mut with_theta = 0;
    for q in partitions_up_to(14).into_iter().filter(|q| q.h() >= 1) {
        let (n, t, h) = (q.n(), q.t(), q.h());
        let lower = (8 * (n - t) + 2 * (h - 1)) as f64;
        let upper = (8 * (n - t) + 2 * h) as f64;
        let e = energy(&q).unwrap();
        let (lo, hi) = e.bounds();
        ensure(lower <= lo && hi < upper, || {
            format!("{q}: [{lo}, {hi}] vs [{lower}, {upper})")
        })?;
        if let Some(th) = e.theta {
            ensure(
                th.certified_in_unit_interval() && th.lo > 0.0 && th.hi < 1.0,
                || format!("{q}: theta bracket [{}, {}]", th.lo, th.hi),
            )?;
            with_theta += 1;
        }
    }
    Ok(format!("{with_theta} partitions carry a certified theta"))
}

fn radius_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for n1 in 1..=50 {
        for n2 in 1..=n1 {
            let q = Partition::new(&[n1, n2]).unwrap();
            let rho = spectral_radius(&q).unwrap().value;
            worst = worst.max((rho - radius_bipartite_closed(n1, n2)).abs());
        }
    }
    ensure(worst <= RADIUS_TOL, || {
        format!("closed form off by {worst:e}")
    })?;
    for q in partitions_up_to(14) {
        let rho = spectral_radius(&q).unwrap();
        let bound = 4.0 * (q.largest() as f64 - 1.0);
        ensure(rho.lo > bound, || {
            format!("{q}: rho bracket {} not above {bound}", rho.lo)
        })?;
    }
    Ok(format!("bipartite worst deviation {worst:.2e}"))
}

fn radius_monotone() -> Outcome {
    let sweep = check_step_monotonicity(12).map_err(|e| e.to_string())?;
    ensure(sweep.radius_violations.is_empty(), || {
        sweep.radius_violations.join("; ")
    })?;
    let mut scans = 0;
    for n in 2..=12 {
        for t in 2..=n {
            let r = scan_radius(n, t).map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!("({n},{t}): {}", r.violations.join("; "))
            })?;
            ensure(r.radius_max_unique() && r.radius_min_unique(), || {
                format!("({n},{t})")
            })?;
            scans += 1;
        }
    }
    Ok(format!("{} elementary steps, {scans} scans", sweep.steps))
}

fn energy_extremes() -> Outcome {
    let (mut scans, mut tied) = (0, 0);
    for n in 2..=12 {
        for t in 2..=n {
            let r = scan_energy(n, t).map_err(|e| e.to_string())?;
            ensure(r.passed(), || {
                format!("({n},{t}): {}", r.violations.join("; "))
            })?;
            ensure(r.energy_min_unique() == (n <= 2 * t + 1), || {
                format!("({n},{t})")
            })?;
            tied += usize::from(!r.energy_min_unique());
            scans += 1;
        }
    }
    Ok(format!("{scans} scans, {tied} with tied minima"))
}

fn determinant() -> Outcome {
    let mut zeros = 0;
    for q in partitions_up_to(12) {
        let det = det_delta_exact(&q);
        let eig = oracle_eigenvalues(&q);
        if det.is_zero() {
            let near_zero = eig.iter().filter(|v| v.abs() < ZERO_THRESHOLD).count();
            ensure(near_zero == 1, || {
                format!("{q}: det 0 but {near_zero} tiny eigenvalues")
            })?;
            zeros += 1;
        } else {
            let exact = det.to_f64().unwrap();
            let product: f64 = eig.iter().product();
            let rel = ((product - exact) / exact).abs();
            ensure(rel <= DET_REL_TOL, || {
                format!("{q}: relative deviation {rel:e}")
            })?;
        }
        let c = char_poly_factored(&q).expand().constant_term();
        let signed = if q.n() % 2 == 0 { det.clone() } else { -det };
        ensure(c == signed, || format!("{q}: constant term {c}"))?;
    }
    Ok(format!("{zeros} singular cases detected exactly"))
}

fn secular_structure() -> Outcome {
    let mut roots = 0;
    for q in partitions_up_to(14) {
        let form = SecularForm::from_partition(&q);
        let spec = full_spectrum(&q).unwrap();
        let iso = &spec.isolated;
        ensure(iso.len() == form.degree(), || format!("{q}: root count"))?;
        for r in iso {
            ensure(r.is_certified_by(&form), || {
                format!("{q}: bracket {r:?} uncertified")
            })?;
        }
        for w in iso.windows(2) {
            ensure(w[1].hi < w[0].lo, || format!("{q}: overlapping brackets"))?;
        }
        // interlacing with the poles, ascending
        let poles: Vec<f64> = form.poles().iter().map(|&(c, _)| c as f64).collect();
        let ascending: Vec<_> = iso.iter().rev().collect();
        for (i, r) in ascending.iter().enumerate() {
            let above = poles[i] < r.lo;
            let below = poles.get(i + 1).is_none_or(|&c| r.hi < c);
            ensure(above && below, || {
                format!("{q}: root {} breaks interlacing", r.value)
            })?;
        }
        roots += iso.len();
    }
    Ok(format!("{roots} isolated roots"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("oracle spectrum equivalence, n <= 14", oracle_equivalence),
        ("M(31,15,7) chain energies and unique maximum", m_31_15_7),
        ("M(30,15,7) chain energies and extrema", m_30_15_7),
        ("M(17,10,6) flat energy landscape", m_17_10_6),
        ("no singleton parts: inertia and energy", no_singletons),
        (
            "singleton parts: three-way inertia vs oracle",
            singleton_inertia,
        ),
        ("singleton parts: energy bounds", energy_bounds),
        (
            "spectral radius closed form and lower bound",
            radius_closed_form,
        ),
        (
            "spectral radius strictly monotone, extremes",
            radius_monotone,
        ),
        (
            "energy extremes over partitions of n into t parts",
            energy_extremes,
        ),
        ("determinant vs oracle and constant term", determinant),
        ("secular root isolation and interlacing", secular_structure),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
