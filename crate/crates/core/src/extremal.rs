//! Exhaustive checks of the extremality and majorization-monotonicity
//! results for energy and spectral radius.
//!
//! Every comparison goes through [`compare_energy`] or [`compare_roots`], so
//! ties are decided by exact case analysis or certified brackets and never
//! by float equality.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::{lambda_s1_sign, RootSign, SecularForm};
use crate::cli::fmt_float;
use crate::error::{Error, Result};
use crate::partitions::{
    complete_split, elementary_chain, enumerate_partitions, enumerate_with_singletons, split_h,
    turan, turan_h, validate_chain, ElementaryChain, MajorizationStep, Partition,
};
use crate::spectrum::{
    compare_energy, compare_roots, energy, inertia, lambda_s1, spectral_radius, EnergyReport,
    InertiaTriple, IsolatedRoot,
};

/// Per-partition values collected by a scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanEntry {
    pub partition: Partition,
    pub energy: EnergyReport,
    pub radius: IsolatedRoot,
    pub inertia: InertiaTriple,
    /// Sign of `λ_{s+1}` when `h >= 1` and `s >= 1`.
    pub lambda_sign: Option<RootSign>,
}

impl ScanEntry {
    pub fn compute(p: &Partition) -> Result<Self> {
        let lambda_sign = if p.h() >= 1 && p.s() >= 1 {
            Some(lambda_s1_sign(p)?)
        } else {
            None
        };
        Ok(Self {
            partition: p.clone(),
            energy: energy(p)?,
            radius: spectral_radius(p)?,
            inertia: inertia(p),
            lambda_sign,
        })
    }

    fn energy_cmp(&self, other: &Self) -> Option<Ordering> {
        compare_energy(
            &self.partition,
            &self.energy,
            &other.partition,
            &other.energy,
        )
    }

    fn radius_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.partition == other.partition {
            return Some(Ordering::Equal);
        }
        compare_roots(
            &SecularForm::from_partition(&self.partition),
            &self.radius,
            &SecularForm::from_partition(&other.partition),
            &other.radius,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    Energy,
    EnergyWithSingletons,
    Radius,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub kind: ScanKind,
    pub n: usize,
    pub t: usize,
    pub h: Option<usize>,
    pub entries: Vec<ScanEntry>,
    pub energy_max: Vec<Partition>,
    pub energy_min: Vec<Partition>,
    pub radius_max: Vec<Partition>,
    pub radius_min: Vec<Partition>,
    /// Comparisons that stayed unresolved after high-precision refinement.
    pub uncertified: usize,
    pub violations: Vec<String>,
}

impl ScanReport {
    pub fn energy_max_unique(&self) -> bool {
        self.energy_max.len() == 1
    }

    pub fn energy_min_unique(&self) -> bool {
        self.energy_min.len() == 1
    }

    pub fn radius_max_unique(&self) -> bool {
        self.radius_max.len() == 1
    }

    pub fn radius_min_unique(&self) -> bool {
        self.radius_min.len() == 1
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// `partition,energy,radius,inertia` table.
    pub fn to_csv(&self) -> String {
        let rows = self.entries.iter().map(|e| {
            let i = &e.inertia;
            vec![
                e.partition.to_string(),
                fmt_float(e.energy.value),
                fmt_float(e.radius.value),
                format!("({},{},{})", i.n_plus, i.n_zero, i.n_minus),
            ]
        });
        write_csv(&["partition", "energy", "radius", "inertia"], rows)
    }
}

pub(crate) fn write_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

/// Members tied for the extreme value under `cmp`; `want` is `Greater` for
/// the maximum and `Less` for the minimum.
fn extremes(
    entries: &[ScanEntry],
    cmp: impl Fn(&ScanEntry, &ScanEntry) -> Option<Ordering>,
    want: Ordering,
    uncertified: &mut usize,
) -> Vec<Partition> {
    let mut best: Vec<&ScanEntry> = Vec::new();
    for e in entries {
        let Some(&lead) = best.first() else {
            best.push(e);
            continue;
        };
        match cmp(e, lead) {
            Some(o) if o == want => best = vec![e],
            Some(Ordering::Equal) => best.push(e),
            Some(_) => {}
            None => {
                *uncertified += 1;
                best.push(e);
            }
        }
    }
    best.into_iter().map(|e| e.partition.clone()).collect()
}

fn build_report(
    kind: ScanKind,
    n: usize,
    t: usize,
    h: Option<usize>,
    members: Vec<Partition>,
) -> Result<ScanReport> {
    let entries = members
        .par_iter()
        .map(ScanEntry::compute)
        .collect::<Result<Vec<_>>>()?;
    let mut uncertified = 0;
    let energy_max = extremes(
        &entries,
        ScanEntry::energy_cmp,
        Ordering::Greater,
        &mut uncertified,
    );
    let energy_min = extremes(
        &entries,
        ScanEntry::energy_cmp,
        Ordering::Less,
        &mut uncertified,
    );
    let radius_max = extremes(
        &entries,
        ScanEntry::radius_cmp,
        Ordering::Greater,
        &mut uncertified,
    );
    let radius_min = extremes(
        &entries,
        ScanEntry::radius_cmp,
        Ordering::Less,
        &mut uncertified,
    );
    Ok(ScanReport {
        kind,
        n,
        t,
        h,
        entries,
        energy_max,
        energy_min,
        radius_max,
        radius_min,
        uncertified,
        violations: Vec::new(),
    })
}

fn show(ps: &[Partition]) -> String {
    let items: Vec<String> = ps.iter().map(|p| format!("({p})")).collect();
    items.join(" ")
}

/// Energy over all partitions of `n` into `t` parts. Expects the maximum only
/// at `S_{n,t}` and the minimum at `T_{n,t}`, unique exactly when `n <= 2t+1`.
pub fn scan_energy(n: usize, t: usize) -> Result<ScanReport> {
    let members: Vec<Partition> = enumerate_partitions(n, t)?.collect();
    let mut report = build_report(ScanKind::Energy, n, t, None, members)?;
    let split = complete_split(n, t)?;
    let balanced = turan(n, t)?;
    let v = &mut report.violations;
    if report.energy_max != [split.clone()] {
        v.push(format!(
            "energy maximum at {} instead of only ({split})",
            show(&report.energy_max)
        ));
    }
    if !report.energy_min.contains(&balanced) {
        v.push(format!(
            "energy minimum at {} excludes ({balanced})",
            show(&report.energy_min)
        ));
    }
    let expect_unique = n <= 2 * t + 1;
    if (report.energy_min.len() == 1) != expect_unique {
        v.push(format!(
            "energy minimum uniqueness is {} but n <= 2t+1 is {expect_unique}",
            report.energy_min.len() == 1
        ));
    }
    if !expect_unique {
        // ties must be exact integer energies
        for e in &report.entries {
            if report.energy_min.contains(&e.partition) && !e.energy.is_integral() {
                v.push(format!(
                    "minimum ({}) has a non-integral energy",
                    e.partition
                ));
            }
        }
    }
    Ok(report)
}

/// Energy over `M(n,t,h)`. Expects `S_{n,t,h}` among the maxima and `T_{n,t,h}`
/// among the minima; both unique whenever `λ_{s+1}(T_{n,t,h}) <= 0`.
pub fn scan_energy_h(n: usize, t: usize, h: usize) -> Result<ScanReport> {
    let members = enumerate_with_singletons(n, t, h)?;
    let mut report = build_report(ScanKind::EnergyWithSingletons, n, t, Some(h), members)?;
    let top = split_h(n, t, h)?;
    let bottom = turan_h(n, t, h)?;
    let bottom_sign = lambda_s1_sign(&bottom)?;
    let v = &mut report.violations;
    if !report.energy_max.contains(&top) {
        v.push(format!(
            "energy maximum at {} excludes ({top})",
            show(&report.energy_max)
        ));
    }
    if !report.energy_min.contains(&bottom) {
        v.push(format!(
            "energy minimum at {} excludes ({bottom})",
            show(&report.energy_min)
        ));
    }
    if bottom_sign != RootSign::Positive {
        if report.energy_max.len() != 1 {
            v.push(format!(
                "energy maximum not unique: {}",
                show(&report.energy_max)
            ));
        }
        if report.energy_min.len() != 1 {
            v.push(format!(
                "energy minimum not unique: {}",
                show(&report.energy_min)
            ));
        }
    }
    Ok(report)
}

/// Spectral radius over all partitions of `n` into `t` parts. Expects a
/// strict unique maximum at `S_{n,t}` and strict unique minimum at `T_{n,t}`.
pub fn scan_radius(n: usize, t: usize) -> Result<ScanReport> {
    let members: Vec<Partition> = enumerate_partitions(n, t)?.collect();
    let mut report = build_report(ScanKind::Radius, n, t, None, members)?;
    let split = complete_split(n, t)?;
    let balanced = turan(n, t)?;
    let v = &mut report.violations;
    if report.radius_max != [split.clone()] {
        v.push(format!(
            "radius maximum at {} instead of only ({split})",
            show(&report.radius_max)
        ));
    }
    if report.radius_min != [balanced.clone()] {
        v.push(format!(
            "radius minimum at {} instead of only ({balanced})",
            show(&report.radius_min)
        ));
    }
    if report.uncertified > 0 {
        v.push(format!(
            "{} radius comparisons uncertified",
            report.uncertified
        ));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainLinkReport {
    pub step: Option<MajorizationStep>,
    pub partition: Partition,
    pub energy: EnergyReport,
    pub radius: IsolatedRoot,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub links: Vec<ChainLinkReport>,
    /// Every step strictly lowers `ρ`, with disjoint brackets.
    pub radius_strict: bool,
    /// No step raises the energy.
    pub energy_monotone: bool,
    pub violations: Vec<String>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let rows = self.links.iter().enumerate().map(|(i, l)| {
            vec![
                i.to_string(),
                l.partition.to_string(),
                fmt_float(l.energy.value),
                fmt_float(l.radius.value),
            ]
        });
        write_csv(&["step", "partition", "energy", "radius"], rows)
    }
}

fn check_chain(chain: &ElementaryChain) -> Result<ChainReport> {
    let members = chain.members();
    let steps = std::iter::once(None).chain(chain.links.iter().map(|(s, _)| Some(*s)));
    let entries = members
        .par_iter()
        .map(ScanEntry::compute)
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    let (mut radius_strict, mut energy_monotone) = (true, true);
    for w in entries.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.radius_cmp(b) != Some(Ordering::Greater) {
            radius_strict = false;
            violations.push(format!(
                "radius not certified to drop from ({}) to ({})",
                a.partition, b.partition
            ));
        }
        if a.energy_cmp(b) == Some(Ordering::Less) {
            energy_monotone = false;
            violations.push(format!(
                "energy rises from ({}) to ({})",
                a.partition, b.partition
            ));
        }
    }
    let links = entries
        .into_iter()
        .zip(steps)
        .map(|(e, step)| ChainLinkReport {
            step,
            partition: e.partition,
            energy: e.energy,
            radius: e.radius,
        })
        .collect();
    Ok(ChainReport {
        links,
        radius_strict,
        energy_monotone,
        violations,
    })
}

/// Builds the elementary chain from `y` down to `x` and checks that `ρ`
/// strictly decreases and `E` never increases along it.
pub fn verify_chain_monotone(y: &Partition, x: &Partition) -> Result<ChainReport> {
    let chain = elementary_chain(y, x).map_err(|e| match e {
        Error::Identical => Error::NotMajorized {
            from: y.to_string(),
            to: x.to_string(),
        },
        other => other,
    })?;
    check_chain(&chain)
}

/// Same checks along a caller-supplied chain; each consecutive pair must be
/// one elementary step apart.
pub fn verify_listed_chain(members: &[Partition]) -> Result<ChainReport> {
    check_chain(&validate_chain(members)?)
}

/// `(from, step, to)` for every elementary step between partitions of
/// `n <= n_max`.
pub fn elementary_steps_up_to(n_max: usize) -> Vec<(Partition, MajorizationStep, Partition)> {
    (2..=n_max)
        .flat_map(|n| (2..=n).flat_map(move |t| enumerate_partitions(n, t).expect("t <= n")))
        .flat_map(|p| {
            p.elementary_successors()
                .into_iter()
                .map(move |(s, q)| (p.clone(), s, q))
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StepSweep {
    pub steps: usize,
    /// Steps where `ρ` did not drop with disjoint brackets.
    pub radius_violations: Vec<String>,
    /// Steps where the energy rose.
    pub energy_violations: Vec<String>,
    /// Steps inside one `M(n,t,h)` where `λ_{s+1}(H) <= 0` but
    /// `λ_{s+1}(G) < λ_{s+1}(H)` failed.
    pub lambda_violations: Vec<String>,
    /// Steps inside one `M(n,t,h)` that were checked for the `λ_{s+1}` ordering.
    pub lambda_checked: usize,
}

impl StepSweep {
    pub fn passed(&self) -> bool {
        self.radius_violations.is_empty()
            && self.energy_violations.is_empty()
            && self.lambda_violations.is_empty()
    }
}

struct StepOutcome {
    radius: Option<String>,
    energy: Option<String>,
    lambda: Option<Option<String>>,
}

fn check_step(g: &Partition, h: &Partition) -> Result<StepOutcome> {
    let (eg, eh) = (ScanEntry::compute(g)?, ScanEntry::compute(h)?);
    let radius = (eg.radius_cmp(&eh) != Some(Ordering::Greater))
        .then(|| format!("ρ({g}) vs ρ({h}) not certified strictly greater"));
    let energy = (eg.energy_cmp(&eh) == Some(Ordering::Less)).then(|| format!("E({g}) < E({h})"));
    let same_class = g.h() == h.h() && g.h() >= 1 && g.s() >= 2;
    let lambda = if same_class && eh.lambda_sign != Some(RootSign::Positive) {
        let (lg, lh) = (lambda_s1(g)?, lambda_s1(h)?);
        let ok = compare_roots(
            &SecularForm::from_partition(g),
            &lg,
            &SecularForm::from_partition(h),
            &lh,
        ) == Some(Ordering::Less)
            && lg.lo > -1.0;
        Some((!ok).then(|| format!("λ_(s+1)({g}) not in (-1, λ_(s+1)({h}))")))
    } else {
        None
    };
    Ok(StepOutcome {
        radius,
        energy,
        lambda,
    })
}

/// Checks every elementary step between partitions of `n <= n_max`.
pub fn check_step_monotonicity(n_max: usize) -> Result<StepSweep> {
    let steps = elementary_steps_up_to(n_max);
    let outcomes = steps
        .par_iter()
        .map(|(g, _, h)| check_step(g, h))
        .collect::<Result<Vec<_>>>()?;
    let mut sweep = StepSweep {
        steps: steps.len(),
        ..StepSweep::default()
    };
    for o in outcomes {
        sweep.radius_violations.extend(o.radius);
        sweep.energy_violations.extend(o.energy);
        if let Some(l) = o.lambda {
            sweep.lambda_checked += 1;
            sweep.lambda_violations.extend(l);
        }
    }
    Ok(sweep)
}

/// For fixed `(n, t)`, fewer singleton parts must mean strictly less energy.
pub fn check_singleton_monotonicity(n: usize, t: usize) -> Result<Vec<String>> {
    let entries = enumerate_partitions(n, t)?
        .map(|p| ScanEntry::compute(&p))
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    for a in &entries {
        for b in &entries {
            if a.partition.h() < b.partition.h() && a.energy_cmp(b) != Some(Ordering::Less) {
                violations.push(format!(
                    "h({}) < h({}) but energy not smaller",
                    a.partition, b.partition
                ));
            }
        }
    }
    Ok(violations)
}

/// For `t+2 <= n < 2t`, every partition other than `T_{n,t}` has more
/// singleton parts than `T_{n,t}`. Empty outside that range.
pub fn check_turan_singletons(n: usize, t: usize) -> Result<Vec<String>> {
    if !(t + 2 <= n && n < 2 * t) {
        return Ok(Vec::new());
    }
    let balanced = turan(n, t)?;
    Ok(enumerate_partitions(n, t)?
        .filter(|p| *p != balanced && p.h() <= balanced.h())
        .map(|p| format!("({p}) has h = {} <= h(T) = {}", p.h(), balanced.h()))
        .collect())
}
