//! Eigenvalues, inertia, energy and spectral radius of `Δ(K_{n_1,...,n_t})`.
//!
//! The eigenvalues split into an exact part (`-4` with multiplicity `n-t`
//! and `3m-4` with multiplicity `k-1` for each part size `m` occurring `k`
//! times, `m = 1` giving `-1`) and the simple roots of the deflated
//! [`SecularForm`]. Those are isolated by bisection between consecutive
//! poles; every bisection sign is computed exactly, so each returned bracket
//! is certified to contain its root.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::charpoly::{lambda_s1_sign, Dyadic, RootSign, SecularForm};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Bisection stops once a bracket is this narrow.
pub const BRACKET_WIDTH: f64 = 1e-12;
/// Bisection stops after this many halvings.
pub const MAX_BISECTIONS: usize = 60;
/// Precision used when two brackets overlap and must be separated.
pub const REFINE_BITS: u32 = 320;

impl Dyadic {
    /// Exact value of a finite float.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot convert {x} to a dyadic rational");
        if x == 0.0 {
            return Self::integer(0);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let mant = BigInt::from(mant) * sign;
        if exp >= 0 {
            Self {
                mant: mant << exp as u32,
                shift: 0,
            }
        } else {
            Self {
                mant,
                shift: (-exp) as u32,
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }
}

/// A simple root with a certified bracket `lo <= root <= hi`.
///
/// Either `lo == hi == value` (the root was hit exactly) or the secular
/// numerator has strictly opposite signs at `lo` and `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsolatedRoot {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl IsolatedRoot {
    fn exact(x: f64) -> Self {
        Self {
            value: x,
            lo: x,
            hi: x,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Checks the certificate against `form` with exact arithmetic.
    pub fn is_certified_by(&self, form: &SecularForm) -> bool {
        if self.is_exact() {
            return form.sign_at(&Dyadic::from_f64(self.value)) == Ordering::Equal;
        }
        let a = form.sign_at(&Dyadic::from_f64(self.lo));
        let b = form.sign_at(&Dyadic::from_f64(self.hi));
        self.lo < self.hi && a != Ordering::Equal && b != Ordering::Equal && a != b
    }
}

/// Bisects `form` on `[lo, hi]`, whose endpoint signs must differ.
fn isolate(form: &SecularForm, mut lo: f64, mut hi: f64) -> Result<IsolatedRoot> {
    let sign = |x: f64| form.sign_at(&Dyadic::from_f64(x));
    let s_lo = sign(lo);
    let s_hi = sign(hi);
    if s_lo == Ordering::Equal {
        return Ok(IsolatedRoot::exact(lo));
    }
    if s_hi == Ordering::Equal {
        return Ok(IsolatedRoot::exact(hi));
    }
    if s_lo == s_hi {
        return Err(Error::BracketFailure(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= BRACKET_WIDTH {
            break;
        }
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        match sign(mid) {
            Ordering::Equal => return Ok(IsolatedRoot::exact(mid)),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    // integer roots are common (0, Perron values of regular cases)
    let r = (lo + (hi - lo) / 2.0).round();
    if lo <= r && r <= hi && sign(r) == Ordering::Equal {
        return Ok(IsolatedRoot::exact(r));
    }
    Ok(IsolatedRoot {
        value: lo + (hi - lo) / 2.0,
        lo,
        hi,
    })
}

/// Narrows a certified bracket to about `bits` bits beyond the binary point.
pub fn refine(form: &SecularForm, root: &IsolatedRoot, bits: u32) -> (Dyadic, Dyadic) {
    let mut lo = Dyadic::from_f64(root.lo);
    let mut hi = Dyadic::from_f64(root.hi);
    if root.is_exact() {
        return (lo, hi);
    }
    let s_lo = form.sign_at(&lo);
    while lo.shift.max(hi.shift) < bits {
        let mid = Dyadic::midpoint(&lo, &hi);
        match form.sign_at(&mid) {
            Ordering::Equal => return (mid.clone(), mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

/// Orders two certified roots; `None` when they cannot be separated at
/// [`REFINE_BITS`] precision.
pub fn compare_roots(
    form_a: &SecularForm,
    a: &IsolatedRoot,
    form_b: &SecularForm,
    b: &IsolatedRoot,
) -> Option<Ordering> {
    if a.lo > b.hi {
        return Some(Ordering::Greater);
    }
    if a.hi < b.lo {
        return Some(Ordering::Less);
    }
    if a.is_exact() && b.is_exact() {
        return a.value.partial_cmp(&b.value);
    }
    let (alo, ahi) = refine(form_a, a, REFINE_BITS);
    let (blo, bhi) = refine(form_b, b, REFINE_BITS);
    if alo > bhi {
        Some(Ordering::Greater)
    } else if ahi < blo {
        Some(Ordering::Less)
    } else if alo == ahi && blo == bhi {
        Some(Ordering::Equal)
    } else {
        None
    }
}

fn upper_perron_bound(p: &Partition) -> f64 {
    (3 * p.largest() + p.n() - 4) as f64
}

fn lower_perron_bound(p: &Partition) -> f64 {
    4.0 * (p.largest() as f64 - 1.0)
}

fn isolate_top(p: &Partition, form: &SecularForm) -> Result<IsolatedRoot> {
    let lo = lower_perron_bound(p);
    if form.sign_at(&Dyadic::from_f64(lo)) != Ordering::Less {
        return Err(Error::BracketFailure(format!(
            "spectral radius of {p} not above 4(n_1 - 1) = {lo}"
        )));
    }
    isolate(form, lo, upper_perron_bound(p))
}

/// Simple roots of the deflated residual, in descending order.
pub fn secular_roots(p: &Partition) -> Result<Vec<IsolatedRoot>> {
    let form = SecularForm::from_partition(p);
    roots_of(p, &form)
}

fn roots_of(p: &Partition, form: &SecularForm) -> Result<Vec<IsolatedRoot>> {
    let poles: Vec<f64> = form.poles().iter().map(|&(c, _)| c as f64).collect();
    let mut roots = vec![isolate_top(p, form)?];
    for w in poles.windows(2).rev() {
        roots.push(isolate(form, w[0], w[1])?);
    }
    Ok(roots)
}

/// Eigenvalue known in closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactEigenvalue {
    pub value: BigRational,
    pub multiplicity: usize,
}

impl Serialize for ExactEigenvalue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExactEigenvalue", 2)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("mult", &self.multiplicity)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    /// Ascending by value.
    pub exact: Vec<ExactEigenvalue>,
    /// Descending by value, each simple.
    pub isolated: Vec<IsolatedRoot>,
    /// The polynomial whose roots are `isolated`.
    pub secular: SecularForm,
}

impl SpectrumReport {
    pub fn total_multiplicity(&self) -> usize {
        self.exact.iter().map(|e| e.multiplicity).sum::<usize>() + self.isolated.len()
    }

    /// All eigenvalues with multiplicity, descending.
    pub fn eigenvalues_desc(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.isolated.iter().map(|r| r.value).collect();
        for e in &self.exact {
            let v = e.value.to_f64().unwrap_or(f64::NAN);
            out.extend(std::iter::repeat_n(v, e.multiplicity));
        }
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues_desc().iter().sum()
    }
}

impl Serialize for SpectrumReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SpectrumReport", 2)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("isolated", &self.isolated)?;
        st.end()
    }
}

pub fn full_spectrum(p: &Partition) -> Result<SpectrumReport> {
    let form = SecularForm::from_partition(p);
    let isolated = roots_of(p, &form)?;
    let mut exact = Vec::new();
    let minus_four = p.n() - p.t();
    if minus_four > 0 {
        exact.push(ExactEigenvalue {
            value: BigRational::from_integer((-4).into()),
            multiplicity: minus_four,
        });
    }
    exact.extend(form.deflated().iter().map(|&(c, k)| ExactEigenvalue {
        value: BigRational::from_integer(c.into()),
        multiplicity: k,
    }));
    let report = SpectrumReport {
        exact,
        isolated,
        secular: form,
    };
    debug_assert_eq!(report.total_multiplicity(), p.n());
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InertiaDerivation {
    AllPartsGe2,
    SingletonCasePositive,
    SingletonCaseZero,
    SingletonCaseNegative,
}

/// `(n_+, n_0, n_-)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InertiaTriple {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
    pub derivation: InertiaDerivation,
}

impl InertiaTriple {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_zero, self.n_minus)
    }
}

/// Inertia from the exact sign criterion; no floating point involved.
pub fn inertia(p: &Partition) -> InertiaTriple {
    use InertiaDerivation::*;
    let (n, t, h, s) = (p.n(), p.t(), p.h(), p.s());
    let triple = |n_plus, n_zero, n_minus, derivation| InertiaTriple {
        n_plus,
        n_zero,
        n_minus,
        derivation,
    };
    if h == 0 {
        return triple(t, 0, n - t, AllPartsGe2);
    }
    // complete graph: λ_1 = n - 1 > 0
    let sign = if s == 0 {
        RootSign::Positive
    } else {
        lambda_s1_sign(p).expect("h >= 1 and s >= 1")
    };
    match sign {
        RootSign::Positive => triple(s + 1, 0, n - s - 1, SingletonCasePositive),
        RootSign::Zero => triple(s, 1, n - s - 1, SingletonCaseZero),
        RootSign::Negative => triple(s, 0, n - s, SingletonCaseNegative),
    }
}

/// `θ = -λ_{s+1}` with its certified bracket.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Theta {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Theta {
    /// Bracket lies in `[0, 1]` with nonzero numerator signs at both ends,
    /// so `θ` is strictly inside `(0, 1)`.
    pub fn certified_in_unit_interval(&self) -> bool {
        0.0 <= self.lo && self.lo < self.hi && self.hi <= 1.0
    }

    pub fn as_root(&self) -> IsolatedRoot {
        IsolatedRoot {
            value: -self.value,
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    /// `8(n-t)`, or `8(n-t) + 2(h-1)` when `h >= 1`.
    pub integer_part: BigInt,
    /// Present exactly when `λ_{s+1} < 0`.
    pub theta: Option<Theta>,
    /// `integer_part + 2θ`.
    pub value: f64,
}

impl EnergyReport {
    pub fn is_integral(&self) -> bool {
        self.theta.is_none()
    }

    /// Certified enclosure `[lo, hi]` of the energy.
    pub fn bounds(&self) -> (f64, f64) {
        let base = self.integer_part.to_f64().unwrap_or(f64::NAN);
        match self.theta {
            None => (base, base),
            Some(th) => (base + 2.0 * th.lo, base + 2.0 * th.hi),
        }
    }
}

impl Serialize for EnergyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("EnergyReport", 3)?;
        st.serialize_field("integer_part", &self.integer_part.to_string())?;
        st.serialize_field("theta", &self.theta)?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

pub fn energy(p: &Partition) -> Result<EnergyReport> {
    let (n, t, h) = (p.n(), p.t(), p.h());
    let base = 8 * (n - t);
    if h == 0 {
        return Ok(integral_energy(base));
    }
    let integer = base + 2 * (h - 1);
    if p.s() == 0 || lambda_s1_sign(p)? != RootSign::Negative {
        return Ok(integral_energy(integer));
    }
    // λ_{s+1} lies in (-1, 0); the numerator is nonzero at both ends
    let form = SecularForm::from_partition(p);
    let lambda = isolate(&form, -1.0, 0.0)?;
    let theta = Theta {
        value: -lambda.value,
        lo: -lambda.hi,
        hi: -lambda.lo,
    };
    Ok(EnergyReport {
        integer_part: BigInt::from(integer),
        theta: Some(theta),
        value: integer as f64 + 2.0 * theta.value,
    })
}

fn integral_energy(v: usize) -> EnergyReport {
    EnergyReport {
        integer_part: BigInt::from(v),
        theta: None,
        value: v as f64,
    }
}

/// Orders the energies of two partitions without float equality.
///
/// Integer parts are even, and a `θ` term adds something in `(0, 2)`, so
/// only equal integer parts with `θ` on both sides need the brackets.
/// Returns `None` if two `θ` values cannot be separated at [`REFINE_BITS`].
pub fn compare_energy(
    pa: &Partition,
    ea: &EnergyReport,
    pb: &Partition,
    eb: &EnergyReport,
) -> Option<Ordering> {
    if pa == pb {
        return Some(Ordering::Equal);
    }
    match (&ea.theta, &eb.theta) {
        (None, None) => Some(ea.integer_part.cmp(&eb.integer_part)),
        (None, Some(_)) => Some(if ea.integer_part <= eb.integer_part {
            Ordering::Less
        } else {
            Ordering::Greater
        }),
        (Some(_), None) => compare_energy(pb, eb, pa, ea).map(Ordering::reverse),
        (Some(ta), Some(tb)) => {
            if ea.integer_part != eb.integer_part {
                return Some(ea.integer_part.cmp(&eb.integer_part));
            }
            let fa = SecularForm::from_partition(pa);
            let fb = SecularForm::from_partition(pb);
            // larger θ means smaller λ
            compare_roots(&fb, &tb.as_root(), &fa, &ta.as_root())
        }
    }
}

/// `λ_{s+1}`, the smallest root of `p(G,x)`, isolated in `(-1, 3m-4)` where
/// `m` is the smallest part size above one.
pub fn lambda_s1(p: &Partition) -> Result<IsolatedRoot> {
    if p.h() == 0 || p.s() == 0 {
        return Err(Error::NotApplicable(format!(
            "needs h >= 1 and s >= 1, got h = {}, s = {}",
            p.h(),
            p.s()
        )));
    }
    let form = SecularForm::from_partition(p);
    let poles = form.poles();
    isolate(&form, poles[0].0 as f64, poles[1].0 as f64)
}

/// Perron value `ρ`, the largest eigenvalue, isolated in
/// `[4(n_1 - 1), 3n_1 + n - 4]`.
pub fn spectral_radius(p: &Partition) -> Result<IsolatedRoot> {
    let form = SecularForm::from_partition(p);
    isolate_top(p, &form)
}

/// `ρ(K_{n1,n2}) = 2(n1+n2) + sqrt(4(n1-n2)^2 + n1 n2) - 4`.
pub fn radius_bipartite_closed(n1: usize, n2: usize) -> f64 {
    let (a, b) = (n1 as f64, n2 as f64);
    2.0 * (a + b) + (4.0 * (a - b).powi(2) + a * b).sqrt() - 4.0
}
